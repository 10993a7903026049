//! Factorisation, CRT coordinates and annihilator submodules of `Z_n`.

use znfal::factorize;
use znfal::ring::{annihilator_submodule, crt_combine, crt_split, divisors};

fn main() -> znfal::Result<()> {
    let m = factorize(360)?;
    println!(
        "n = {m}, components {:?}, square-free: {}",
        m.components(),
        m.is_squarefree()
    );

    let x = 277;
    let parts = crt_split(x, &m);
    println!("{x} -> {parts:?} -> {}", crt_combine(&parts, &m));

    let m = factorize(30)?;
    for k in divisors(&m) {
        let ann = annihilator_submodule(k, &m)?;
        println!(
            "Ann({k:>2}) = {:>2}Z_30, {} elements",
            ann.generator,
            ann.order()
        );
    }
    Ok(())
}
