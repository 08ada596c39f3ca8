//! Explicit character tables of small permutation groups.
//!
//! Fusion rules come from `N_{ij}^k = ⟨χ_i χ_j, χ_k⟩` and restriction
//! multiplicities from `⟨Res χ, ψ⟩_H`, both as exact sums over group
//! elements rounded to the nearest integer. Every table checks itself
//! (orthonormality, class functions, `Σ deg² = |G|`) before use.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::f64::consts::PI;

use cosetkit::format::{write_functor, write_group, write_ring, FunctorSpec};
use cosetkit::{FiniteGroup, FusionRing};
use num_complex::Complex64;

pub type Perm = Vec<usize>;

/// `(a b)(x) = a(b(x))`.
pub fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn invert(a: &Perm) -> Perm {
    let mut inv = vec![0; a.len()];
    for (x, &y) in a.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// Sorted list of all products of the generators; the identity sorts first.
pub fn closure(degree: usize, gens: &[Perm]) -> Vec<Perm> {
    let id: Perm = (0..degree).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = compose(g, &p);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn fixed_points(p: &Perm) -> usize {
    p.iter().enumerate().filter(|(x, y)| x == *y).count()
}

pub fn sign(p: &Perm) -> f64 {
    let mut seen = vec![false; p.len()];
    let mut s = 1.0;
    for start in 0..p.len() {
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// Sorted cycle lengths greater than one.
pub fn cycle_type(p: &Perm) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut lengths = Vec::new();
    for start in 0..p.len() {
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 1 {
            lengths.push(len);
        }
    }
    lengths.sort_unstable();
    lengths
}

pub fn cycle_notation(p: &Perm) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&x.to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

fn root_of_unity(n: usize, k: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (k % n) as f64 / n as f64)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub struct Character {
    pub label: String,
    pub value: Box<dyn Fn(&Perm) -> Complex64>,
}

fn character(label: &str, value: impl Fn(&Perm) -> Complex64 + 'static) -> Character {
    Character {
        label: label.to_string(),
        value: Box::new(value),
    }
}

pub struct CharGroup {
    pub name: String,
    pub elements: Vec<Perm>,
    pub chars: Vec<Character>,
    pub element_label: Box<dyn Fn(&Perm) -> String>,
}

const EPS: f64 = 1e-9;

impl CharGroup {
    fn new(name: &str, degree: usize, gens: &[Perm], chars: Vec<Character>) -> Self {
        let g = Self {
            name: name.to_string(),
            elements: closure(degree, gens),
            chars,
            element_label: Box::new(cycle_notation),
        };
        g.check()
            .unwrap_or_else(|e| panic!("character table of {name}: {e}"));
        g
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn value(&self, i: usize, p: &Perm) -> Complex64 {
        (self.chars[i].value)(p)
    }

    pub fn degree(&self, i: usize) -> usize {
        let id: Perm = (0..self.elements[0].len()).collect();
        self.value(i, &id).re.round() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.chars.len()).map(|i| self.degree(i)).collect()
    }

    /// `(1/|G|) Σ f(x) conj(g(x))`.
    pub fn inner(
        &self,
        f: impl Fn(&Perm) -> Complex64,
        g: impl Fn(&Perm) -> Complex64,
    ) -> Complex64 {
        let sum: Complex64 = self.elements.iter().map(|x| f(x) * g(x).conj()).sum();
        sum / self.order() as f64
    }

    fn conjugacy_classes(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for x in &self.elements {
            if seen.contains(x) {
                continue;
            }
            count += 1;
            for g in &self.elements {
                seen.insert(compose(&compose(g, x), &invert(g)));
            }
        }
        count
    }

    pub fn check(&self) -> Result<(), String> {
        let n = self.chars.len();
        if n != self.conjugacy_classes() {
            return Err(format!(
                "{n} characters for {} classes",
                self.conjugacy_classes()
            ));
        }
        for i in 0..n {
            for j in 0..n {
                let ip = self.inner(|x| self.value(i, x), |x| self.value(j, x));
                let expected = if i == j { 1.0 } else { 0.0 };
                if (ip - real(expected)).norm() > EPS {
                    return Err(format!("⟨χ{i}, χ{j}⟩ = {ip}"));
                }
            }
        }
        for i in 0..n {
            for x in &self.elements {
                for g in &self.elements {
                    let y = compose(&compose(g, x), &invert(g));
                    if (self.value(i, x) - self.value(i, &y)).norm() > EPS {
                        return Err(format!("{} is not a class function", self.chars[i].label));
                    }
                }
            }
            if self.degree(i) == 1 {
                for x in &self.elements {
                    for y in &self.elements {
                        let d = self.value(i, &compose(x, y)) - self.value(i, x) * self.value(i, y);
                        if d.norm() > EPS {
                            return Err(format!("{} is not multiplicative", self.chars[i].label));
                        }
                    }
                }
            }
        }
        let sum: usize = self.degrees().iter().map(|d| d * d).sum();
        if sum != self.order() {
            return Err(format!("Σ deg² = {sum}, |G| = {}", self.order()));
        }
        Ok(())
    }

    fn round(z: Complex64, what: &str) -> u32 {
        let r = z.re.round();
        assert!(
            (z - real(r)).norm() < EPS && r >= 0.0,
            "{what} = {z} is not a nonnegative integer"
        );
        r as u32
    }

    pub fn fusion(&self, i: usize, j: usize, k: usize) -> u32 {
        let z = self.inner(
            |x| self.value(i, x) * self.value(j, x),
            |x| self.value(k, x),
        );
        Self::round(z, "fusion coefficient")
    }

    pub fn rep_ring(&self) -> FusionRing {
        let n = self.chars.len();
        let dual = (0..n)
            .map(|i| {
                (0..n)
                    .find(|&j| {
                        self.elements
                            .iter()
                            .all(|x| (self.value(i, x).conj() - self.value(j, x)).norm() < EPS)
                    })
                    .expect("dual character")
            })
            .collect();
        let mut constants = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.fusion(i, j, k);
                    if v > 0 {
                        constants.push((i, j, k, v));
                    }
                }
            }
        }
        let labels = self.chars.iter().map(|c| c.label.clone()).collect();
        FusionRing::new(format!("rep_{}", self.name), labels, dual, constants)
            .expect("well-formed ring")
    }

    pub fn contains(&self, h: &CharGroup) -> bool {
        h.elements
            .iter()
            .all(|x| self.elements.binary_search(x).is_ok())
    }

    pub fn has_normal_subgroup(&self, h: &CharGroup) -> bool {
        self.contains(h)
            && self.elements.iter().all(|g| {
                h.elements.iter().all(|x| {
                    h.elements
                        .binary_search(&compose(&compose(g, x), &invert(g)))
                        .is_ok()
                })
            })
    }

    /// Multiplicities `⟨Res χ_i, ψ_j⟩_H` as a functor `Rep(G) → Rep(H)`.
    pub fn restriction(&self, h: &CharGroup) -> FunctorSpec {
        assert!(self.contains(h), "{} is not inside {}", h.name, self.name);
        let mut entries = Vec::new();
        for i in 0..self.chars.len() {
            for j in 0..h.chars.len() {
                let v = Self::round(
                    h.inner(|x| self.value(i, x), |x| h.value(j, x)),
                    "restriction multiplicity",
                );
                if v > 0 {
                    entries.push((i, j, v));
                }
            }
        }
        FunctorSpec {
            name: format!("res_{}_{}", self.name, h.name),
            source: format!("rep_{}", self.name),
            target: format!("rep_{}", h.name),
            entries,
        }
    }

    pub fn group(&self) -> FiniteGroup {
        let n = self.order();
        let index = |p: &Perm| self.elements.binary_search(p).expect("closed");
        let table = (0..n * n)
            .map(|x| index(&compose(&self.elements[x / n], &self.elements[x % n])))
            .collect();
        let labels = self
            .elements
            .iter()
            .map(|p| (self.element_label)(p))
            .collect();
        FiniteGroup::with_labels(self.name.clone(), table, labels)
            .expect("permutation groups are groups")
    }

    /// Element indices of `h` inside this group's element order.
    pub fn indices_of(&self, h: &CharGroup) -> Vec<usize> {
        h.elements
            .iter()
            .map(|x| self.elements.binary_search(x).expect("subgroup"))
            .collect()
    }
}

/// Characters of a cyclic group of order `n`, given the exponent of each element
/// relative to a fixed generator.
fn cyclic_chars(n: usize, exponent: impl Fn(&Perm) -> usize + Clone + 'static) -> Vec<Character> {
    (0..n)
        .map(|m| {
            let label = match (n, m) {
                (_, 0) => "1".to_string(),
                (2, 1) => "ε".to_string(),
                (3, 1) => "ω".to_string(),
                (3, 2) => "ω²".to_string(),
                _ => format!("χ{m}"),
            };
            let e = exponent.clone();
            character(&label, move |p| root_of_unity(n, m * e(p)))
        })
        .collect()
}

fn shift(n: usize, k: usize) -> Perm {
    (0..n).map(|x| (x + k) % n).collect()
}

/// `ℤ/n` acting on itself by translation.
pub fn cyclic(n: usize) -> CharGroup {
    let name = format!("z{n}");
    CharGroup::new(&name, n, &[shift(n, 1)], cyclic_chars(n, |p| p[0]))
}

pub fn s3() -> CharGroup {
    let chars = vec![
        character("1", |_| real(1.0)),
        character("s", |p| real(sign(p))),
        character("ρ", |p| real(fixed_points(p) as f64 - 1.0)),
    ];
    CharGroup::new("s3", 3, &[vec![1, 0, 2], vec![1, 2, 0]], chars)
}

/// `⟨(012)⟩ ⊂ S₃`.
pub fn z3_in_s3() -> CharGroup {
    CharGroup::new("z3", 3, &[vec![1, 2, 0]], cyclic_chars(3, |p| p[0]))
}

/// `⟨(01)⟩ ⊂ S₃`.
pub fn z2_in_s3() -> CharGroup {
    CharGroup::new("z2", 3, &[vec![1, 0, 2]], cyclic_chars(2, |p| p[0]))
}

fn s4_rho(p: &Perm) -> f64 {
    match cycle_type(p).as_slice() {
        [] => 2.0,
        [2, 2] => 2.0,
        [3] => -1.0,
        _ => 0.0,
    }
}

pub fn s4() -> CharGroup {
    let chars = vec![
        character("1", |_| real(1.0)),
        character("sgn", |p| real(sign(p))),
        character("ρ", |p| real(s4_rho(p))),
        character("std", |p| real(fixed_points(p) as f64 - 1.0)),
        character("std′", |p| real(sign(p) * (fixed_points(p) as f64 - 1.0))),
    ];
    CharGroup::new("s4", 4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], chars)
}

/// The stabilizer of the point 3 in `S₄`.
pub fn s3_in_s4() -> CharGroup {
    let chars = vec![
        character("1", |_| real(1.0)),
        character("s", |p| real(sign(p))),
        character("ρ", |p| real(fixed_points(p) as f64 - 2.0)),
    ];
    CharGroup::new("s3", 4, &[vec![1, 0, 2, 3], vec![1, 2, 0, 3]], chars)
}

/// Image of `p ∈ A₄` in `A₄/V₄ ≅ ℤ/3`, read off from the action on the three
/// pairings `{01|23}, {02|13}, {03|12}`.
fn a4_exponent(p: &Perm) -> usize {
    // Pairing `m` pairs 0 with m + 1; its image pairs p(0) with p(m + 1).
    let image = |m: usize| {
        let (a, b) = (p[0], p[m + 1]);
        let partner_of_zero = if a == 0 {
            b
        } else if b == 0 {
            a
        } else {
            // {a, b} avoids 0, so 0 is paired with the remaining point.
            (1..4).find(|&x| x != a && x != b).expect("four points")
        };
        partner_of_zero - 1
    };
    image(0)
}

pub fn a4() -> CharGroup {
    let chars = vec![
        character("1", |_| real(1.0)),
        character("ω", |p| root_of_unity(3, a4_exponent(p))),
        character("ω²", |p| root_of_unity(3, 2 * a4_exponent(p))),
        character("std", |p| real(fixed_points(p) as f64 - 1.0)),
    ];
    CharGroup::new("a4", 4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], chars)
}

/// `⟨(012)⟩ ⊂ A₄`.
pub fn z3_in_a4() -> CharGroup {
    CharGroup::new("z3", 4, &[vec![1, 2, 0, 3]], cyclic_chars(3, |p| p[0]))
}

fn is_rotation(p: &Perm) -> bool {
    p[1] == (p[0] + 1) % 4
}

/// Symmetries of the square with vertices 0, 1, 2, 3 in cyclic order.
pub fn d4() -> CharGroup {
    let chars = vec![
        character("1", |_| real(1.0)),
        character("ε1", |p| real(if is_rotation(p) { 1.0 } else { -1.0 })),
        character("ε2", |p| real(if p[0] % 2 == 0 { 1.0 } else { -1.0 })),
        character("ε3", |p| {
            real(if is_rotation(p) == (p[0] % 2 == 0) {
                1.0
            } else {
                -1.0
            })
        }),
        character("ρ", |p| {
            real(if is_rotation(p) {
                [2.0, 0.0, -2.0, 0.0][p[0]]
            } else {
                0.0
            })
        }),
    ];
    CharGroup::new("d4", 4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]], chars)
}

/// Rotations of the square.
pub fn z4_in_d4() -> CharGroup {
    CharGroup::new("z4", 4, &[vec![1, 2, 3, 0]], cyclic_chars(4, |p| p[0]))
}

/// The centre `{e, r²}` of `D₄`.
pub fn z2_in_d4() -> CharGroup {
    CharGroup::new("z2", 4, &[vec![2, 3, 0, 1]], cyclic_chars(2, |p| p[0] / 2))
}

const Q8_LABELS: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];

/// Product of quaternion units encoded as `2 u + s` with `u ∈ {1, i, j, k}`, `s` the sign bit.
fn q8_mul(a: usize, b: usize) -> usize {
    // UNIT[u][v] = (sign bit, unit) of u v.
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let (s, u) = UNIT[a / 2][b / 2];
    2 * u + (s ^ (a % 2) ^ (b % 2))
}

fn q8_regular(g: usize) -> Perm {
    (0..8).map(|h| q8_mul(g, h)).collect()
}

/// `Q₈` acting on itself by left multiplication; an element is its value at `1`.
pub fn q8() -> CharGroup {
    let unit_sign = |axis: usize| {
        move |p: &Perm| {
            real(if p[0] / 2 == 0 || p[0] / 2 == axis {
                1.0
            } else {
                -1.0
            })
        }
    };
    let chars = vec![
        character("1", |_| real(1.0)),
        character("χi", unit_sign(1)),
        character("χj", unit_sign(2)),
        character("χk", unit_sign(3)),
        character("ρ", |p| {
            real([2.0, -2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0][p[0]])
        }),
    ];
    let mut g = CharGroup::new("q8", 8, &[q8_regular(2), q8_regular(4)], chars);
    g.element_label = Box::new(|p| Q8_LABELS[p[0]].to_string());
    g
}

/// `⟨i⟩ ⊂ Q₈`.
pub fn z4_in_q8() -> CharGroup {
    CharGroup::new(
        "z4",
        8,
        &[q8_regular(2)],
        cyclic_chars(4, |p| [0, 2, 1, 3][p[0]]),
    )
}

/// The restriction fixtures: `(G, H)` pairs with `H ≤ G`.
pub fn restriction_pairs() -> Vec<(CharGroup, CharGroup)> {
    vec![
        (s3(), z3_in_s3()),
        (s3(), z2_in_s3()),
        (s4(), s3_in_s4()),
        (s4(), a4_in_s4()),
        (a4(), z3_in_a4()),
        (d4(), z4_in_d4()),
        (d4(), z2_in_d4()),
        (q8(), z4_in_q8()),
    ]
}

/// `A₄ ⊂ S₄` with the same characters as [`a4`].
pub fn a4_in_s4() -> CharGroup {
    a4()
}

/// Ring fixtures derived from character tables, keyed by file name.
pub fn rep_rings() -> Vec<FusionRing> {
    let mut rings = vec![
        s3().rep_ring(),
        s4().rep_ring(),
        a4().rep_ring(),
        d4().rep_ring(),
        q8().rep_ring(),
    ];
    rings.extend((2..=6).map(|n| cyclic(n).rep_ring()));
    rings
}

const GENERATED: &str = "# generated by examples/gen_fixtures.rs from explicit character tables\n";

/// Every oracle-derived fixture as `(file name, contents)`.
pub fn generated_fixtures() -> Vec<(String, String)> {
    let mut files = Vec::new();
    for ring in rep_rings() {
        files.push((
            format!("{}.ring", ring.name()),
            format!("{GENERATED}{}", write_ring(&ring)),
        ));
    }
    for (g, h) in restriction_pairs() {
        // Subgroup tables must reproduce the shipped ring of the same name.
        let sub = h.rep_ring();
        let shipped = rep_rings()
            .into_iter()
            .find(|r| r.name() == sub.name())
            .expect("target ring");
        assert_eq!(
            write_ring(&sub),
            write_ring(&shipped),
            "{} inside {}",
            h.name,
            g.name
        );
        let spec = g.restriction(&h);
        files.push((
            format!("{}.functor", spec.name),
            format!("{GENERATED}{}", write_functor(&spec)),
        ));
    }
    for g in [s3(), d4(), q8(), a4()] {
        files.push((
            format!("{}.group", g.name),
            format!("{GENERATED}{}", write_group(&g.group())),
        ));
    }
    files
}
