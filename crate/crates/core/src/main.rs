fn main() { std::process::exit(sphord::cli::main()); }
