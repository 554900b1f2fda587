fn main() {
    std::process::exit(eps_sis::cli::run(std::env::args().skip(1)));
}
