fn main() {
    let args: Vec<String> = std::env::args().collect();
    let out = graphlink::cli::run(&args, &mut std::io::stdin());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
