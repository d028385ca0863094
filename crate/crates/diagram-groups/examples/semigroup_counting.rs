//! Bounded oracles for the presented semigroups: count elements where the
//! closure stabilizes, and decide word equality with an explicit derivation
//! as the witness.
//!
//! ```bash
//! cargo run --example semigroup_counting
//! ```

use std::sync::Arc;

use diagram_groups::families::{fibonacci_presentation, IsoInstance};
use diagram_groups::semigroup::{count_elements_default, word_equal, CountOutcome, Verdict};

fn main() -> Result<(), diagram_groups::Error> {
    // the three-letter Fibonacci semigroup is finite
    let fib3 = Arc::new(fibonacci_presentation(3)?);
    report(&fib3, count_elements_default(&fib3));

    // so is the two-letter reduction of the four-letter one
    let fib4: IsoInstance = "fib4".parse()?;
    report(fib4.target(), count_elements_default(fib4.target()));

    // while the five-letter Fibonacci semigroup never stabilizes in bounds
    let fib5 = Arc::new(fibonacci_presentation(5)?);
    report(&fib5, count_elements_default(&fib5));

    // word equality comes with a derivation
    let p23 = Arc::new(diagram_groups::presentations::Presentation::parse(
        "<a,b | a=bab, b=aba>",
    )?);
    let a5 = p23.parse_word("a^5")?;
    let a = p23.parse_word("a")?;
    match word_equal(&p23, &a5, &a, 12, 100_000) {
        Verdict::Equal { derivation } => {
            println!(
                "a^5 = a modulo {p23}, witnessed by {} cells:",
                derivation.cell_count()
            );
            print!("{derivation}");
        }
        other => println!("unexpected verdict: {other:?}"),
    }
    Ok(())
}

fn report(pres: &Arc<diagram_groups::presentations::Presentation>, outcome: CountOutcome) {
    match outcome {
        CountOutcome::Stable(n) => println!("{pres} presents {n} elements"),
        CountOutcome::Unknown { max_len, max_states } => println!(
            "{pres}: no stable count within max_len={max_len}, max_states={max_states}"
        ),
    }
}
