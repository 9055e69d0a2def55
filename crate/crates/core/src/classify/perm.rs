//! Small permutations and a brute-force Hurwitz existence check.

use std::collections::HashSet;

/// A permutation of `0..n` as its image list; composition `p.then(q)`
/// applies `p` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    /// From 1-based cycles, e.g. `[[1, 2], [3, 4]]` for `(12)(34)`.
    pub fn from_cycles(n: usize, cycles: &[&[u8]]) -> Self {
        let mut p = Perm::identity(n);
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                p.0[(x - 1) as usize] = c[(i + 1) % c.len()] - 1;
            }
        }
        p
    }

    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Cycle lengths, largest first.
    pub fn cycle_type(&self) -> Vec<u32> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            if len > 0 {
                out.push(len);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn order(&self) -> u32 {
        self.cycle_type().into_iter().fold(1, num_integer::lcm)
    }

    /// Cycle notation, 1-based; `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                out.push_str(&(x + 1).to_string());
                x = self.0[x] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// All permutations of `0..n`.
pub fn all_perms(n: usize) -> Vec<Perm> {
    fn go(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(Perm(prefix.clone()));
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u8);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Orbits as a labelling `i -> smallest element of its block`.
fn join(blocks: &[u8], p: &Perm) -> Vec<u8> {
    let mut label = blocks.to_vec();
    loop {
        let mut changed = false;
        for i in 0..label.len() {
            let j = p.0[i] as usize;
            let m = label[i].min(label[j]);
            if label[i] != m || label[j] != m {
                let (li, lj) = (label[i], label[j]);
                for l in label.iter_mut() {
                    if *l == li || *l == lj {
                        *l = m;
                    }
                }
                changed = true;
            }
        }
        if !changed {
            return label;
        }
    }
}

/// Whether a connected degree-`d` cover of a genus-`g` surface exists with
/// the given cycle types over the branch points: permutations `a_i, b_i,
/// s_j` with `prod [a_i, b_i] * prod s_j = 1` generating a transitive group.
pub fn realizable(d: usize, genus: u32, profiles: &[Vec<u32>]) -> bool {
    let perms = all_perms(d);
    let start = (Perm::identity(d), (0..d as u8).collect::<Vec<u8>>());
    let mut states: HashSet<(Perm, Vec<u8>)> = HashSet::from([start]);
    for _ in 0..genus {
        let mut next = HashSet::new();
        for (prod, blocks) in &states {
            for a in &perms {
                let with_a = join(blocks, a);
                for b in &perms {
                    let comm = a.then(b).then(&a.inverse()).then(&b.inverse());
                    next.insert((prod.then(&comm), join(&with_a, b)));
                }
            }
        }
        states = next;
    }
    for profile in profiles {
        let mut want = profile.clone();
        want.sort_unstable_by(|a, b| b.cmp(a));
        let choices: Vec<&Perm> = perms.iter().filter(|p| p.cycle_type() == want).collect();
        let mut next = HashSet::new();
        for (prod, blocks) in &states {
            for s in &choices {
                next.insert((prod.then(s), join(blocks, s)));
            }
        }
        states = next;
    }
    states.iter().any(|(prod, blocks)| prod.is_identity() && blocks.iter().all(|&l| l == 0))
}
