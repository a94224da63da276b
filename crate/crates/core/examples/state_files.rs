//! Round-trips a state through the JSON and plain-text file formats.

use tripartite::io::{parse_state, state_to_json, state_to_text};
use tripartite::states::HaarStream;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let state = HaarStream::new(42).state(0);
    let json = state_to_json(&state);
    let text = state_to_text(&state);
    println!("JSON:\n{json}\n\nText:\n{text}");
    assert_eq!(parse_state(&json)?, state);
    assert_eq!(parse_state(&text)?, state);
    println!("both formats round-trip bit for bit");

    let unnormalized = "3 0\n0 0\n0 0\n0 0\n0 0\n0 0\n0 0\n4 0\n";
    let s = parse_state(unnormalized)?;
    println!(
        "unnormalized input rescaled: |000> -> {}, |111> -> {}",
        s.amplitudes()[0],
        s.amplitudes()[7]
    );

    match parse_state("1 0\n0 0\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("malformed input rejected: {e}"),
    }
    Ok(())
}
