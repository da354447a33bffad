fn main() {
    std::process::exit(patent_interactions::cli::main());
}
