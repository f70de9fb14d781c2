fn main() {
    std::process::exit(tight_embed::cli::run(std::env::args_os()));
}
