fn main() {
    std::process::exit(nullcone::cli::dispatch(std::env::args_os()));
}
