//! Drive the command-line front end in-process and print its reports.

use dualfield::cli::run;

fn main() {
    for args in [
        "dualfield hyper boost --beta 0.6 --absE 1 --absH 1",
        "dualfield --format csv dual invariants --theta 0 --E 1,0,0 --H 0,1,0",
        "dualfield qfield contradiction",
    ] {
        let out = run(args.split_whitespace());
        println!("$ {args}  (exit {})\n{}", out.code, out.stdout);
    }
}
