fn main() {
    std::process::exit(serialcob::cli::run(std::env::args_os()));
}
