fn main() {
    std::process::exit(ccurve::run(std::env::args_os()));
}
