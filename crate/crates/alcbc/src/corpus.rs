//! Seeded random formulae and models over a tiny vocabulary.

use alcbc_core::typesys::Reasoner;
use alcbc_core::{Concept, Config, Formula, Interpretation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CONCEPT_NAMES: [&str; 3] = ["A", "B", "C"];
pub const ROLE_NAMES: [&str; 2] = ["r", "s"];
pub const INDIVIDUAL_NAMES: [&str; 2] = ["a", "b"];

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_atoms: usize,
    pub max_quantifier_depth: usize,
    /// Upper bound on concept nodes per atom.
    pub max_concept_size: usize,
    pub max_domain: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_atoms: 4,
            max_quantifier_depth: 2,
            max_concept_size: 5,
            max_domain: 3,
        }
    }
}

pub struct Corpus {
    rng: ChaCha8Rng,
    shape: Shape,
    config: Config,
}

impl Corpus {
    pub fn new(seed: u64) -> Self {
        Self::with_shape(seed, Shape::default())
    }

    pub fn with_shape(seed: u64, shape: Shape) -> Self {
        Corpus {
            rng: ChaCha8Rng::seed_from_u64(seed),
            shape,
            config: Config::default(),
        }
    }

    fn pick<'a>(&mut self, from: &[&'a str]) -> &'a str {
        from.choose(&mut self.rng).expect("nonempty")
    }

    fn concept(&mut self, depth: usize, size: usize) -> Concept {
        if size <= 1 || self.rng.gen_bool(0.35) {
            return if self.rng.gen_bool(0.1) {
                Concept::top()
            } else {
                Concept::name(self.pick(&CONCEPT_NAMES))
            };
        }
        let kinds = if depth > 0 { 5 } else { 3 };
        match self.rng.gen_range(0..kinds) {
            0 => Concept::not(self.concept(depth, size - 1)),
            1 | 2 if size >= 3 => {
                let left = self.rng.gen_range(1..size - 1);
                let l = self.concept(depth, left);
                let r = self.concept(depth, (size - 1 - left).max(1));
                if self.rng.gen_bool(0.5) {
                    Concept::and(l, r)
                } else {
                    Concept::or(l, r)
                }
            }
            1 | 2 => Concept::not(self.concept(depth, size - 1)),
            3 => {
                let r = self.pick(&ROLE_NAMES);
                Concept::exists(r, self.concept(depth - 1, size - 1))
            }
            _ => {
                let r = self.pick(&ROLE_NAMES);
                Concept::forall(r, self.concept(depth - 1, size - 1))
            }
        }
    }

    fn atom(&mut self) -> Formula {
        let size = self.rng.gen_range(1..=self.shape.max_concept_size);
        let depth = self.shape.max_quantifier_depth;
        match self.rng.gen_range(0..10) {
            0..=4 => {
                let c = self.concept(depth, size);
                Formula::assertion(c, self.pick(&INDIVIDUAL_NAMES))
            }
            5..=7 => {
                let r = self.pick(&ROLE_NAMES);
                Formula::role(r, self.pick(&INDIVIDUAL_NAMES), self.pick(&INDIVIDUAL_NAMES))
            }
            _ => Formula::eq_top(self.concept(depth, size)),
        }
    }

    fn combine(&mut self, mut parts: Vec<Formula>) -> Formula {
        while parts.len() > 1 {
            let i = self.rng.gen_range(0..parts.len());
            let l = parts.swap_remove(i);
            let j = self.rng.gen_range(0..parts.len());
            let r = parts.swap_remove(j);
            let mut g = if self.rng.gen_bool(0.55) {
                Formula::and(l, r)
            } else {
                Formula::or(l, r)
            };
            if self.rng.gen_bool(0.2) {
                g = Formula::not(g);
            }
            parts.push(g);
        }
        parts.pop().expect("at least one part")
    }

    /// A formula with at most `max_atoms` atoms that fits the default caps.
    pub fn formula(&mut self) -> Formula {
        loop {
            let n = self.rng.gen_range(1..=self.shape.max_atoms);
            let pool: Vec<Formula> = (0..n).map(|_| self.atom()).collect();
            let mut parts: Vec<Formula> = pool
                .iter()
                .map(|a| {
                    if self.rng.gen_bool(0.3) {
                        Formula::not(a.clone())
                    } else {
                        a.clone()
                    }
                })
                .collect();
            if n > 1 && self.rng.gen_bool(0.3) {
                // reuse an atom so some formulae share structure
                let extra = pool.choose(&mut self.rng).expect("nonempty").clone();
                parts.push(Formula::not(extra));
            }
            let f = self.combine(parts);
            if Reasoner::new(&f, &self.config).is_ok() {
                return f;
            }
        }
    }

    pub fn formulas(&mut self, count: usize) -> Vec<Formula> {
        (0..count).map(|_| self.formula()).collect()
    }

    /// A random interpretation of the whole vocabulary.
    pub fn interpretation(&mut self) -> Interpretation {
        let n = self.rng.gen_range(1..=self.shape.max_domain);
        let el = |i: usize| format!("e{}", i + 1);
        let mut b = Interpretation::builder((0..n).map(el));
        for c in CONCEPT_NAMES {
            let members: Vec<String> = (0..n).filter(|_| self.rng.gen_bool(0.5)).map(el).collect();
            b = b.concept(c, members);
        }
        for r in ROLE_NAMES {
            let mut pairs = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    if self.rng.gen_bool(0.4) {
                        pairs.push((el(x), el(y)));
                    }
                }
            }
            b = b.role(r, pairs);
        }
        for a in INDIVIDUAL_NAMES {
            b = b.individual(a, el(self.rng.gen_range(0..n)));
        }
        b.build().expect("generated over its own domain")
    }

    /// Pairs `(φ, M)` with `M ⊨ φ`. Formulae without a model among a few
    /// hundred random interpretations are skipped.
    pub fn model_pairs(&mut self, count: usize) -> Vec<(Formula, Interpretation)> {
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let f = self.formula();
            for _ in 0..300 {
                let m = self.interpretation();
                if m.holds(&f).expect("full vocabulary") {
                    out.push((f, m));
                    break;
                }
            }
        }
        out
    }

    /// Pairs `(φ, M)` with no constraint on whether `M ⊨ φ`.
    pub fn any_pairs(&mut self, count: usize) -> Vec<(Formula, Interpretation)> {
        (0..count)
            .map(|_| {
                let f = self.formula();
                (f, self.interpretation())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alcbc_core::syntax::{atoms, individuals, role_names};

    fn quantifier_depth(c: &Concept) -> usize {
        match c {
            Concept::Exists(_, x) => 1 + quantifier_depth(x),
            Concept::Not(x) => quantifier_depth(x),
            Concept::And(l, r) => quantifier_depth(l).max(quantifier_depth(r)),
            _ => 0,
        }
    }

    #[test]
    fn shape_is_respected() {
        let mut c = Corpus::new(7);
        for f in c.formulas(200) {
            assert!(atoms(&f).len() <= 4);
            assert!(role_names(&f).len() <= 2);
            assert!(individuals(&f).len() <= 2);
            for a in atoms(&f) {
                if let Formula::ConceptAssertion(c, _) | Formula::ConceptEqTop(c) = a {
                    assert!(quantifier_depth(&c) <= 2);
                }
            }
        }
    }

    #[test]
    fn seeded_output_is_reproducible() {
        let a: Vec<String> = Corpus::new(42).formulas(20).iter().map(|f| f.to_string()).collect();
        let b: Vec<String> = Corpus::new(42).formulas(20).iter().map(|f| f.to_string()).collect();
        assert_eq!(a, b);
        let c: Vec<String> = Corpus::new(43).formulas(20).iter().map(|f| f.to_string()).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn pairs_are_models() {
        for (f, m) in Corpus::new(3).model_pairs(20) {
            assert!(m.holds(&f).unwrap());
        }
    }
}
