//! Deterministic workloads shared by the kernel benchmarks.

use nlconj::extreal::ratio;
use nlconj::fuzz::Fuzzer;
use nlconj::geometry::CircleGrid;
use nlconj::group::{GroupFn, GroupSpec};
use nlconj::{Carrier, ExtFn, Rational, TestFamily};

pub fn function_pair(n: usize, seed: u64) -> (ExtFn, ExtFn) {
    let mut fz = Fuzzer::new(seed);
    let c = Carrier::indexed(n).expect("nonempty");
    (fz.function(&c), fz.real_function(&c))
}

pub fn family_instance(n: usize, members: usize, seed: u64) -> (ExtFn, TestFamily) {
    let mut fz = Fuzzer::new(seed);
    let c = Carrier::indexed(n).expect("nonempty");
    let f = fz.lower_extended(&c);
    let family = (0..members).map(|_| fz.real_function(&c)).collect();
    (f, TestFamily::new(c, family).expect("same carrier"))
}

/// Grid points, values, and sorted slopes for the 1-D Legendre transform.
pub fn legendre_instance(n: usize, slopes: usize, seed: u64) -> (Vec<Rational>, Vec<nlconj::ExtReal>, Vec<Rational>) {
    let mut fz = Fuzzer::new(seed);
    let points: Vec<Rational> = (0..n as i64).map(|i| ratio(i - n as i64 / 2, 4)).collect();
    let c = Carrier::indexed(n).expect("nonempty");
    let values = fz.lower_extended(&c).values().to_vec();
    let mut s: Vec<Rational> = (0..slopes).map(|_| fz.real()).collect();
    s.sort();
    (points, values, s)
}

pub fn circle_instance(n: usize, seed: u64) -> (CircleGrid, ExtFn) {
    let mut fz = Fuzzer::new(seed);
    let grid = CircleGrid::new(n).expect("n >= 3");
    let f = fz.lower_extended(grid.carrier());
    (grid, f)
}

pub fn group_instance(radius: u32, seed: u64) -> (GroupFn, GroupFn) {
    let mut fz = Fuzzer::new(seed);
    let spec = GroupSpec::zd(1, radius).expect("small window");
    (fz.group_fn(&spec, false), fz.group_fn(&spec, false))
}
