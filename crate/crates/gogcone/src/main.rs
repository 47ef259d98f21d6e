fn main() {
    std::process::exit(gogcone::cli::main());
}
