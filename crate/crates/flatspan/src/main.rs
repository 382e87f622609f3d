fn main() {
    std::process::exit(flatspan::cli::dispatch(std::env::args_os()));
}
