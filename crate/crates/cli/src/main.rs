fn main() {
    std::process::exit(netcover_cli::dispatch(std::env::args_os()));
}
