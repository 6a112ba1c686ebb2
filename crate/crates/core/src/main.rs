fn main() {
    std::process::exit(kforest::cli::main_entry());
}
