fn main() {
    std::process::exit(pq_oscillator::cli::run(std::env::args().collect()));
}
