use super::{Poset, PosetError};

/// Standard posets with known Möbius functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `0 < 1 < ... < n`.
    Chain(usize),
    /// Subsets of `{1..n}` under inclusion.
    Boolean(usize),
    /// Divisors of `n` under divisibility.
    Divisors(u64),
    /// Set partitions of `{1..n}` under refinement.
    Partitions(usize),
    /// `{1..n}` under divisibility.
    Divisibility(u64),
    /// `n` pairwise incomparable elements.
    Antichain(usize),
    /// `0 < a, b < 1` with `a`, `b` incomparable.
    Diamond,
}

const MAX_BOOLEAN: usize = 8;
const MAX_PARTITIONS: usize = 8;
const MAX_CHAIN: usize = 4096;
const MAX_DIVISORS: u64 = 1_000_000;
const MAX_DIVISIBILITY: u64 = 2048;

pub fn family(kind: Family) -> Result<Poset, PosetError> {
    let bound = |family: &'static str, param: u64, max: u64| {
        if param > max {
            Err(PosetError::BoundExceeded { family, param, max })
        } else {
            Ok(())
        }
    };
    match kind {
        Family::Chain(n) => {
            bound("chain", n as u64, MAX_CHAIN as u64)?;
            let labels = (0..=n).map(|i| i.to_string()).collect();
            Ok(Poset::from_order_fn(labels, |i, j| i <= j))
        }
        Family::Antichain(n) => {
            bound("antichain", n as u64, MAX_CHAIN as u64)?;
            let labels = (0..n).map(|i| format!("a{i}")).collect();
            Ok(Poset::from_order_fn(labels, |_, _| false))
        }
        Family::Diamond => {
            let labels = ["0", "a", "b", "1"].map(String::from).to_vec();
            Ok(Poset::from_order_fn(labels, |i, j| i == 0 || j == 3))
        }
        Family::Boolean(n) => {
            bound("boolean", n as u64, MAX_BOOLEAN as u64)?;
            let labels = (0..1usize << n)
                .map(|mask| {
                    let items: Vec<String> = (0..n)
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| (b + 1).to_string())
                        .collect();
                    format!("{{{}}}", items.join(","))
                })
                .collect();
            Ok(Poset::from_order_fn(labels, |i, j| i & j == i))
        }
        Family::Divisors(n) => {
            if n == 0 {
                return Err(PosetError::BoundExceeded {
                    family: "divisors",
                    param: 0,
                    max: MAX_DIVISORS,
                });
            }
            bound("divisors", n, MAX_DIVISORS)?;
            let ds = divisors(n);
            let labels = ds.iter().map(u64::to_string).collect();
            Ok(Poset::from_order_fn(labels, |i, j| ds[j] % ds[i] == 0))
        }
        Family::Divisibility(n) => {
            bound("divisibility", n, MAX_DIVISIBILITY)?;
            let labels = (1..=n).map(|i| i.to_string()).collect();
            Ok(Poset::from_order_fn(labels, |i, j| (j + 1) % (i + 1) == 0))
        }
        Family::Partitions(n) => {
            bound("partitions", n as u64, MAX_PARTITIONS as u64)?;
            let parts = set_partitions(n);
            let labels = parts.iter().map(|p| partition_label(p)).collect();
            Ok(Poset::from_order_fn(labels, |i, j| refines(&parts[i], &parts[j])))
        }
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Restricted growth strings: `rgs[i]` is the block of element `i`.
fn set_partitions(n: usize) -> Vec<Vec<u8>> {
    fn go(prefix: &mut Vec<u8>, max: u8, n: usize, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            prefix.push(b);
            go(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), 0, n, &mut out);
    out
}

fn refines(fine: &[u8], coarse: &[u8]) -> bool {
    (0..fine.len()).all(|i| (0..i).all(|j| fine[i] != fine[j] || coarse[i] == coarse[j]))
}

fn partition_label(rgs: &[u8]) -> String {
    if rgs.is_empty() {
        return "{}".to_string();
    }
    let blocks = rgs.iter().copied().max().unwrap_or(0) as usize + 1;
    (0..blocks)
        .map(|b| {
            rgs.iter()
                .enumerate()
                .filter(|&(_, &x)| x as usize == b)
                .map(|(i, _)| (i + 1).to_string())
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("|")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(family(Family::Chain(3)).unwrap().len(), 4);
        assert_eq!(family(Family::Boolean(4)).unwrap().len(), 16);
        assert_eq!(family(Family::Divisors(12)).unwrap().len(), 6);
        assert_eq!(family(Family::Divisors(1)).unwrap().len(), 1);
        // Bell numbers.
        let bells: Vec<usize> = (0..=6)
            .map(|n| family(Family::Partitions(n)).unwrap().len())
            .collect();
        assert_eq!(bells, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn bounds_enforced() {
        assert!(matches!(
            family(Family::Boolean(9)),
            Err(PosetError::BoundExceeded { .. })
        ));
        assert!(family(Family::Divisors(0)).is_err());
        assert!(family(Family::Divisors(1_000_001)).is_err());
    }

    #[test]
    fn partition_labels_and_order() {
        let p = family(Family::Partitions(3)).unwrap();
        let fine = p.index_of("1|2|3").unwrap();
        let mid = p.index_of("13|2").unwrap();
        let top = p.index_of("123").unwrap();
        assert!(p.lt(fine, mid) && p.lt(mid, top));
        assert!(!p.leq(mid, p.index_of("12|3").unwrap()));
    }
}
