fn main() {
    let (code, out) = ordcone::cli::run(std::env::args_os());
    println!("{out}");
    std::process::exit(code);
}
