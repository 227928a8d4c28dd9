fn main() { std::process::exit(fqt::cli::run()) }
