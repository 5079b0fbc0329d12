//! Regenerates the bundled fixtures deterministically.
//!
//! Usage: `gen-fixtures [output-dir]` (default `fixtures`). Every file is
//! produced from fixed seeds over the crate's portable generator, so
//! reruns are byte-identical.

use std::fs;
use std::path::{Path, PathBuf};

use audit_sampler::rng::SplitMix64;

const TRANSACTIONS_SEED: u64 = 0x5EED_0001;
const MESSAGES_SEED: u64 = 0x5EED_0002;

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("fixtures"));
    fs::create_dir_all(&dir)?;
    write_transactions(&dir.join("transactions.csv"))?;
    write_messages(&dir.join("messages.csv"))?;
    write_transfers(&dir.join("transfers.csv"))?;
    println!("fixtures written to {}", dir.display());
    Ok(())
}

/// 1000 synthetic account rows, two well-separated Gaussian classes
/// (500 normal / 500 risky) over four continuous attributes.
fn write_transactions(path: &Path) -> std::io::Result<()> {
    let mut rng = SplitMix64::new(TRANSACTIONS_SEED);
    let mut out = String::from("amount,balance,frequency,tenure,label\n");
    for i in 0..1000 {
        let risky = i % 2 == 1;
        let (amount, balance, frequency, tenure, label) = if risky {
            (
                210.0 + 45.0 * rng.normal_f64(),
                3300.0 + 850.0 * rng.normal_f64(),
                43.0 + 6.5 * rng.normal_f64(),
                19.0 + 13.0 * rng.normal_f64(),
                "risky",
            )
        } else {
            (
                120.0 + 40.0 * rng.normal_f64(),
                5200.0 + 900.0 * rng.normal_f64(),
                30.0 + 6.0 * rng.normal_f64(),
                48.0 + 14.0 * rng.normal_f64(),
                "normal",
            )
        };
        out.push_str(&format!(
            "{amount:.2},{balance:.2},{frequency:.2},{tenure:.2},{label}\n"
        ));
    }
    fs::write(path, out)
}

/// 40-message mini corpus: 20 ham / 20 spam built from disjoint word
/// pools plus shared filler words.
fn write_messages(path: &Path) -> std::io::Result<()> {
    let spam_pool = [
        "win", "free", "prize", "claim", "cash", "urgent", "offer", "text", "call", "now",
        "winner", "reward", "click", "limited", "deal",
    ];
    let ham_pool = [
        "meeting", "lunch", "tomorrow", "home", "thanks", "see", "you", "later", "time",
        "good", "morning", "project", "notes", "dinner", "ok",
    ];
    let filler = ["to", "a", "the", "and", "your", "is"];
    let mut rng = SplitMix64::new(MESSAGES_SEED);
    let mut wtr = csv::Writer::from_path(path)?;
    wtr.write_record(["label", "text"])?;
    for i in 0..40 {
        let spam = i % 2 == 1;
        let pool: &[&str] = if spam { &spam_pool } else { &ham_pool };
        let words = 5 + rng.below(4) as usize;
        let mut message = Vec::with_capacity(words);
        for _ in 0..words {
            if rng.below(4) == 0 {
                message.push(filler[rng.below(filler.len() as u64) as usize]);
            } else {
                message.push(pool[rng.below(pool.len() as u64) as usize]);
            }
        }
        let mut text = message.join(" ");
        if spam && rng.below(2) == 0 {
            text.push('!');
        }
        wtr.write_record([if spam { "spam" } else { "ham" }, &text])?;
    }
    wtr.flush()?;
    Ok(())
}

/// 30-vertex multigraph with a doubled-edge pair, a triangle, a
/// high-degree hub and mid-degree clusters covering all risk bins.
fn write_transfers(path: &Path) -> std::io::Result<()> {
    let mut edges: Vec<(String, String)> = Vec::new();
    let v = |n: usize| format!("a{n:02}");
    let push = |edges: &mut Vec<(String, String)>, a: usize, b: usize| {
        edges.push((v(a), v(b)));
    };
    // Doubled transfer pair: both endpoints end with degree exactly 2.
    push(&mut edges, 1, 2);
    push(&mut edges, 1, 2);
    // Closed triangle: clustering coefficient 1 at each corner.
    push(&mut edges, 3, 4);
    push(&mut edges, 4, 5);
    push(&mut edges, 5, 3);
    // Hub: degree 11 over 10 distinct neighbors, one closed pair.
    push(&mut edges, 6, 7);
    push(&mut edges, 6, 7);
    for leaf in 8..=16 {
        push(&mut edges, 6, leaf);
    }
    push(&mut edges, 7, 8);
    // Mid-degree cluster around a17.
    push(&mut edges, 17, 18);
    push(&mut edges, 17, 19);
    push(&mut edges, 17, 20);
    push(&mut edges, 18, 19);
    // Six-cycle a21..a26.
    for i in 21..=25 {
        push(&mut edges, i, i + 1);
    }
    push(&mut edges, 26, 21);
    // Boost a21 and a22 into the higher-degree bins.
    for leaf in 9..=12 {
        push(&mut edges, 21, leaf);
    }
    push(&mut edges, 22, 13);
    push(&mut edges, 22, 14);
    // Star with one doubled spoke and one closed pair.
    push(&mut edges, 27, 28);
    push(&mut edges, 27, 28);
    push(&mut edges, 27, 29);
    push(&mut edges, 27, 30);
    push(&mut edges, 28, 29);
    // Second hub a23 and mid-degree a28 so every risk bin has at least
    // two members.
    for leaf in [9, 10, 11, 15, 17, 18, 26, 29] {
        push(&mut edges, 23, leaf);
    }
    for leaf in [12, 25, 10] {
        push(&mut edges, 28, leaf);
    }

    let mut out = String::from("source,target\n");
    for (a, b) in edges {
        out.push_str(&format!("{a},{b}\n"));
    }
    fs::write(path, out)
}
