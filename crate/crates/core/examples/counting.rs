//! Current counts by order and the weight identities.

use spincons::counting::{consistency_check, current_counts};

fn main() {
    for ts in 1..=4 {
        let c = current_counts(ts, 0);
        let table = consistency_check(ts, 2, 8);
        println!("2s = {ts}: T {} Z {} V {}  identities {}", c.t, c.z, c.v, if table.ok { "hold" } else { "FAIL" });
    }
    let t = consistency_check(2, 1, 4);
    println!("{}", serde_json::to_string_pretty(&t).expect("serializable"));
}
