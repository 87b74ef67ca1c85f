use quiver_crystals::error::Error;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match quiver_crystals::cli::run(&args) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
        }
        Err(Error::Domain(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(Error::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            std::process::exit(2);
        }
    }
}
