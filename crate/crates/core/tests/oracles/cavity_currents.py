"""Symbolic oracle for the cavity field functions, Lagrangian density,
Noether currents, charges, spin density and Hilbert norms.

Everything here is derived by direct symbolic differentiation and
integration of the field-function definitions, independent of the Rust
closed forms. Run with `python3 cavity_currents.py`; the printed values
are frozen into `tests/currents.rs`.

Unit system used by the frozen tests: c = eps0 = mu0 = hbar = e = 1.
"""
import sympy as sp

z, t = sp.symbols("z t", real=True)
I = sp.I

c = eps0 = mu0 = hbar = e = sp.Integer(1)
L = sp.Integer(1)
V = sp.Integer(2)


def mode(alpha, m, c1, c2, sign):
    k = alpha * sp.pi / L
    w = alpha * sp.pi * c / L
    ae = sp.sqrt(2 * w**2 * m / (V * eps0))
    ah = sp.sqrt(2 * w**2 * m / (V * mu0))
    q = c1 * sp.exp(I * w * t) + c2 * sp.exp(-I * w * t)
    # antiderivatives without integration constants
    qp = w * sp.integrate(q, t)
    qpp = w * sp.integrate(qp, t)
    u1 = sp.sqrt(eps0) * ae * sp.sin(k * z) * (q + sign * I * qpp)
    u2 = sp.sqrt(mu0) * ah * sp.cos(k * z) * (-qp + sign * I / w * sp.diff(q, t))
    return [u1, u2]


def d(f, mu):
    if mu == 3:
        return sp.diff(f, z)
    if mu == 4:
        return sp.diff(f, t) / (I * c)
    return sp.Integer(0)


def quantities(us):
    cj = [sp.conjugate(u) for u in us]
    lag = sum(d(u, 3) * d(uc, 3) + d(u, 4) * d(uc, 4) for u, uc in zip(us, cj))
    pref = I * e / (hbar * c)
    j1 = {mu: -pref * sum(d(uc, mu) * u for u, uc in zip(us, cj))
          + pref * sum(d(u, mu) * uc for u, uc in zip(us, cj)) for mu in (3, 4)}
    j2 = {mu: -pref * sum(d(uc, mu) * u + d(u, mu) * uc for u, uc in zip(us, cj))
          for mu in (3, 4)}
    area = V / L
    q1 = -area * sp.integrate(sum(d(uc, 4) * u - d(u, 4) * uc for u, uc in zip(us, cj)), (z, 0, L))
    q2p = I * area * sp.integrate(sum(d(uc, 4) * u + d(u, 4) * uc for u, uc in zip(us, cj)), (z, 0, L))
    norm2 = sum(sp.integrate(u * uc, (z, 0, L)) for u, uc in zip(us, cj))
    return lag, j1, j2, q1, q2p, norm2


def spin_density(modes_us):
    dens = 0
    for u1, u2 in modes_us:
        term = d(sp.conjugate(u1), 4) * u2 - d(sp.conjugate(u2), 4) * u1
        dens += term + sp.conjugate(term)
    return dens


def show(label, expr, pt):
    v = complex(sp.N(expr.subs(pt), 30))
    print(f"{label:28s} re={v.real:+.17e} im={v.imag:+.17e}")


if __name__ == "__main__":
    pt = {z: sp.Rational(37, 100), t: sp.Rational(61, 100)}
    for sign, tag in ((1, "plus"), (-1, "minus")):
        c1 = sp.Rational(3, 10) + sp.Rational(4, 10) * I
        c2 = -sp.Rational(2, 10) + sp.Rational(1, 10) * I
        us = mode(1, sp.Rational(3, 2), c1, c2, sign)
        lag, j1, j2, q1, q2p, norm2 = quantities(us)
        print(f"--- single mode alpha=1 m=3/2 sign={tag}, z=0.37 t=0.61")
        show("lagrangian", lag, pt)
        show("j1_3", j1[3], pt)
        show("j1_4", j1[4], pt)
        show("j2_3", j2[3], pt)
        show("j2_4", j2[4], pt)
        show("Q1", q1, pt)
        show("Q2prime", q2p, pt)
        show("norm^2", norm2, pt)
        # continuity of the generic definitions
        cont = sp.simplify(sp.diff(j2[3], z) + sp.diff(j2[4], t) / (I * c))
        print("continuity j2 (symbolic)   ", sp.simplify(sp.expand(cont.rewrite(sp.exp))))

    # two-mode set for additivity / spin
    c1a, c2a = sp.Rational(1, 2), sp.Rational(1, 4) * I
    c1b, c2b = sp.Rational(-1, 5) + sp.Rational(3, 10) * I, sp.Rational(7, 10)
    ma = mode(1, sp.Integer(1), c1a, c2a, 1)
    mb = mode(2, sp.Rational(1, 2), c1b, c2b, 1)
    dens = spin_density([ma, mb])
    show("spin density S4_12", dens, pt)
    s43 = -I / c * (V / L) * sp.integrate(dens, (z, 0, L))
    print("spirality S4_3 (symbolic)  ", sp.simplify(s43))
    lag2 = quantities(ma + mb)[0]
    show("lagrangian two-mode", lag2, pt)
