fn main() {
    std::process::exit(fermat_cycles::cli::main_with_args(std::env::args_os()));
}
