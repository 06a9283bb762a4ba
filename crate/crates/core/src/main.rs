fn main() {
    std::process::exit(stf::cli::main());
}
