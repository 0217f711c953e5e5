//! Print the first Ramanujan sums next to their number-theoretic ingredients.

use rft_doppler::numtheory::{moebius, ramanujan_sum, ramanujan_sum_direct, totient, RamanujanTable};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>3} {:>4} {:>4}   c_q(1..=12)", "q", "mu", "phi");
    for q in 1..=12u64 {
        let row: Vec<String> = (1..=12).map(|n| ramanujan_sum(q, n).map(|c| format!("{c:>3}"))).collect::<Result<_, _>>()?;
        println!("{q:>3} {:>4} {:>4}   {}", moebius(q)?, totient(q)?, row.join(" "));
    }

    let direct = ramanujan_sum_direct(12, 6)?;
    println!("\nc_12(6): closed form {}, character sum {:.3}", ramanujan_sum(12, 6)?, direct);

    let table = RamanujanTable::new(30)?;
    println!("one period of c_30: {:?}", table.period(30));
    Ok(())
}
