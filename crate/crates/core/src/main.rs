fn main() {
    std::process::exit(wk::cli::main());
}
