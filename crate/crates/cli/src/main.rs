fn main() {
    std::process::exit(thetacalc::run(std::env::args_os()));
}
