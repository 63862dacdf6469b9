//! The projective automorphism group of the Dwork pencil: semidirect
//! product of coordinate permutations with diagonal root-of-unity twists.
//!
//! An element is a pair `(sigma, a)` acting by the matrix `P_sigma D_a`
//! (twist first, then permute), where `D_a = diag(zeta^{a_j})` with
//! `zeta = zeta_{n+1}`. Twist vectors are taken modulo a global shift
//! (projectivities are diagonal-scaling classes) and normalized so that
//! `a_1 = 0`; the sum of the twists must vanish modulo `n + 1` so that the
//! whole pencil is preserved.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::cyclotomic::Cyclo;
use crate::{GeomError, Result};

/// An automorphism `(sigma, a)` of the Dwork pencil in `P^n`, in canonical
/// form (`a_1 = 0`, all twists reduced modulo `n + 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    /// `perm[j] = sigma(j)` on 0-based coordinate indices `0..=n`.
    perm: Vec<usize>,
    /// Twist exponents `a_j` modulo `n + 1`, normalized with `twists[0] = 0`.
    twists: Vec<u32>,
}

impl GroupElement {
    /// Construct from a permutation and twist vector; the twist sum must
    /// vanish modulo `n + 1`.
    pub fn new(perm: Vec<usize>, twists: Vec<i64>) -> Result<Self> {
        let k = perm.len();
        if k < 2 || twists.len() != k {
            return Err(GeomError::InvalidInput(
                "permutation and twist vector must have equal length >= 2".into(),
            ));
        }
        let mut seen = vec![false; k];
        for &p in &perm {
            if p >= k || seen[p] {
                return Err(GeomError::InvalidInput("not a permutation".into()));
            }
            seen[p] = true;
        }
        let m = k as i64;
        let sum: i64 = twists.iter().sum();
        if sum.rem_euclid(m) != 0 {
            return Err(GeomError::InvalidInput(format!(
                "twist vector {:?} does not preserve the pencil: sum {} is nonzero mod {}",
                twists, sum, m
            )));
        }
        let reduced: Vec<u32> = twists.iter().map(|&t| t.rem_euclid(m) as u32).collect();
        let mut e = GroupElement { perm, twists: reduced };
        e.normalize();
        Ok(e)
    }

    pub fn identity(n: usize) -> Self {
        GroupElement { perm: (0..=n).collect(), twists: vec![0; n + 1] }
    }

    /// Pure diagonal element with the given twists.
    pub fn diagonal(twists: Vec<i64>) -> Result<Self> {
        let k = twists.len();
        GroupElement::new((0..k).collect(), twists)
    }

    /// Number of homogeneous coordinates `n + 1`.
    pub fn len(&self) -> usize {
        self.perm.len()
    }

    /// Ambient projective dimension `n`.
    pub fn ambient_n(&self) -> usize {
        self.perm.len() - 1
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn twists(&self) -> &[u32] {
        &self.twists
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
            && self.twists.iter().all(|&t| t == 0)
    }

    /// Subtract the first twist from all twists (projectively trivial).
    fn normalize(&mut self) {
        let m = self.len() as i64;
        let shift = self.twists[0] as i64;
        for t in self.twists.iter_mut() {
            *t = ((*t as i64) - shift).rem_euclid(m) as u32;
        }
    }

    /// Group product `self * other` (apply `other` first, as matrices).
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.len(), other.len());
        let k = self.len();
        let m = k as i64;
        let perm: Vec<usize> = (0..k).map(|j| self.perm[other.perm[j]]).collect();
        let twists: Vec<u32> = (0..k)
            .map(|j| {
                ((self.twists[other.perm[j]] as i64 + other.twists[j] as i64).rem_euclid(m))
                    as u32
            })
            .collect();
        let mut e = GroupElement { perm, twists };
        e.normalize();
        e
    }

    pub fn inverse(&self) -> GroupElement {
        let k = self.len();
        let m = k as i64;
        let mut inv_perm = vec![0usize; k];
        for (j, &p) in self.perm.iter().enumerate() {
            inv_perm[p] = j;
        }
        let twists: Vec<u32> = (0..k)
            .map(|j| (-(self.twists[inv_perm[j]] as i64)).rem_euclid(m) as u32)
            .collect();
        let mut e = GroupElement { perm: inv_perm, twists };
        e.normalize();
        e
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Sign of the permutation part: `true` when even.
    pub fn perm_is_even(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut transpositions = 0;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    /// Whether the element acts trivially on the holomorphic period of the
    /// family (equivalently, the permutation part is even).
    pub fn preserves_period(&self) -> bool {
        self.perm_is_even()
    }

    /// Cycles of the permutation part, each starting from its smallest
    /// member, sorted by that member (fixed points included as 1-cycles).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut cycles = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.perm[j];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// The projective matrix `P_sigma D_a` with entries in `Q(zeta_{n+1})`.
    pub fn matrix(&self) -> Vec<Vec<Cyclo>> {
        let k = self.len();
        let m = k as u64;
        let mut mat = vec![vec![Cyclo::zero(); k]; k];
        for j in 0..k {
            mat[self.perm[j]][j] = Cyclo::root_of_unity(m, self.twists[j] as i64);
        }
        mat
    }

    /// Parse an element literal: either `h(t_1,...,t_{n+1})` for a diagonal
    /// element, or `(cycles);t_1,...,t_{n+1}` / `(cycles)` in 1-based cycle
    /// notation, with `()` denoting the identity permutation.
    pub fn parse(s: &str, n: usize) -> Result<GroupElement> {
        let (e, rest) = parse_element_prefix(s.trim(), n)?;
        if !rest.trim().is_empty() {
            return Err(GeomError::Parse(format!(
                "unexpected trailing input {:?} after element literal",
                rest.trim()
            )));
        }
        Ok(e)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote_cycle = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            write!(f, "(")?;
            for (i, c) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", c + 1)?;
            }
            write!(f, ")")?;
            wrote_cycle = true;
        }
        if !wrote_cycle {
            write!(f, "()")?;
        }
        write!(f, ";")?;
        for (i, t) in self.twists.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", t)?;
        }
        Ok(())
    }
}

/// Parse one element literal at the start of `s`; returns the element and
/// the unconsumed remainder (used to split generator lists, since twist
/// vectors contain top-level commas).
fn parse_element_prefix(s: &str, n: usize) -> Result<(GroupElement, &str)> {
    let k = n + 1;
    let s = s.trim_start();
    if let Some(rest) = s.strip_prefix('h') {
        let rest = rest.trim_start();
        let inner_end = rest
            .find(')')
            .ok_or_else(|| GeomError::Parse("missing ')' in diagonal literal".into()))?;
        if !rest.starts_with('(') {
            return Err(GeomError::Parse("expected '(' after 'h'".into()));
        }
        let twists = parse_int_list(&rest[1..inner_end], k)?;
        let e = GroupElement::diagonal(twists)?;
        return Ok((e, &rest[inner_end + 1..]));
    }
    if !s.starts_with('(') {
        return Err(GeomError::Parse(format!(
            "element literal must start with '(' or 'h': {:?}",
            s
        )));
    }
    // parse one or more cycles
    let mut perm: Vec<usize> = (0..k).collect();
    let mut pos = 0;
    let bytes = s.as_bytes();
    let mut assigned = vec![false; k];
    while pos < bytes.len() && bytes[pos] == b'(' {
        let close = s[pos..]
            .find(')')
            .ok_or_else(|| GeomError::Parse("missing ')' in cycle".into()))?
            + pos;
        let inner = &s[pos + 1..close];
        let entries = parse_cycle_entries(inner, k)?;
        for &e in &entries {
            if assigned[e] {
                return Err(GeomError::Parse(format!(
                    "coordinate {} appears in more than one cycle",
                    e + 1
                )));
            }
            assigned[e] = true;
        }
        for i in 0..entries.len() {
            perm[entries[i]] = entries[(i + 1) % entries.len()];
        }
        pos = close + 1;
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
    }
    let mut rest = &s[pos..];
    let mut twists = vec![0i64; k];
    if let Some(after) = rest.trim_start().strip_prefix(';') {
        // the twist vector is exactly k comma-separated integers
        let mut taken = after;
        let mut consumed = 0usize;
        let mut vals = Vec::with_capacity(k);
        for i in 0..k {
            let chunk_end = taken[consumed..]
                .find(',')
                .map(|p| consumed + p)
                .unwrap_or(taken.len());
            let piece = &taken[consumed..chunk_end];
            let v: i64 = piece.trim().parse().map_err(|_| {
                GeomError::Parse(format!("invalid twist entry {:?}", piece.trim()))
            })?;
            vals.push(v);
            consumed = if i + 1 < k {
                if chunk_end == taken.len() {
                    return Err(GeomError::Parse(format!(
                        "twist vector must have {} entries",
                        k
                    )));
                }
                chunk_end + 1
            } else {
                chunk_end
            };
        }
        twists = vals;
        taken = &taken[consumed..];
        rest = taken;
    }
    let e = GroupElement::new(perm, twists)?;
    Ok((e, rest))
}

fn parse_int_list(s: &str, expected: usize) -> Result<Vec<i64>> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != expected {
        return Err(GeomError::Parse(format!(
            "expected {} comma-separated integers, found {}",
            expected,
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| GeomError::Parse(format!("invalid integer {:?}", p.trim())))
        })
        .collect()
}

/// Parse 1-based cycle entries; tokens may be space-separated, and a
/// contiguous digit string is split into single digits when every digit is a
/// valid coordinate (so `(12345)` means `(1 2 3 4 5)` for n = 4).
fn parse_cycle_entries(inner: &str, k: usize) -> Result<Vec<usize>> {
    let mut entries = Vec::new();
    for tok in inner.split_whitespace() {
        let v: usize = tok
            .parse()
            .map_err(|_| GeomError::Parse(format!("invalid cycle entry {:?}", tok)))?;
        if v >= 1 && v <= k {
            entries.push(v - 1);
        } else if tok.chars().all(|c| {
            c.is_ascii_digit() && c != '0' && (c as usize - '0' as usize) <= k
        }) {
            for c in tok.chars() {
                entries.push(c as usize - '0' as usize - 1);
            }
        } else {
            return Err(GeomError::Parse(format!(
                "cycle entry {:?} out of range 1..={}",
                tok, k
            )));
        }
    }
    if entries.is_empty() && !inner.trim().is_empty() {
        return Err(GeomError::Parse("empty cycle".into()));
    }
    Ok(entries)
}

/// Parse a comma-separated list of element literals.
pub fn parse_generators(s: &str, n: usize) -> Result<Vec<GroupElement>> {
    let mut gens = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let (e, r) = parse_element_prefix(rest, n)?;
        gens.push(e);
        rest = r.trim_start();
        if let Some(r2) = rest.strip_prefix(',') {
            rest = r2.trim_start();
            if rest.is_empty() {
                return Err(GeomError::Parse("trailing comma in generator list".into()));
            }
        } else if !rest.is_empty() {
            return Err(GeomError::Parse(format!(
                "expected ',' between generators, found {:?}",
                rest
            )));
        }
    }
    if gens.is_empty() {
        return Err(GeomError::Parse("empty generator list".into()));
    }
    Ok(gens)
}

/// Generate the subgroup spanned by `gens`, failing if it exceeds `cap`
/// elements. The result is sorted for deterministic iteration.
pub fn generate_subgroup(gens: &[GroupElement], cap: usize) -> Result<Vec<GroupElement>> {
    if gens.is_empty() {
        return Err(GeomError::InvalidInput("no generators".into()));
    }
    let n = gens[0].ambient_n();
    for g in gens {
        if g.ambient_n() != n {
            return Err(GeomError::InvalidInput("generators of mixed sizes".into()));
        }
    }
    let id = GroupElement::identity(n);
    let mut seen: HashSet<GroupElement> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::new();
    queue.push_back(id);
    while let Some(g) = queue.pop_front() {
        for gen in gens {
            let h = g.compose(gen);
            if !seen.contains(&h) {
                if seen.len() >= cap {
                    return Err(GeomError::InvalidInput(format!(
                        "subgroup exceeds the cap of {} elements",
                        cap
                    )));
                }
                seen.insert(h.clone());
                queue.push_back(h);
            }
        }
    }
    let mut out: Vec<GroupElement> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Conjugacy classes of the subgroup `group` (which must be closed under
/// the group operation); each class is sorted, and classes are sorted by
/// their least element.
pub fn conjugacy_classes(group: &[GroupElement]) -> Vec<Vec<GroupElement>> {
    conjugacy_classes_with_gens(group, group)
}

/// Conjugacy classes computed by conjugating with `gens` only; `gens` must
/// generate the same subgroup as `group` spans.
pub fn conjugacy_classes_with_gens(
    group: &[GroupElement],
    gens: &[GroupElement],
) -> Vec<Vec<GroupElement>> {
    let index: HashMap<&GroupElement, usize> =
        group.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let gen_pairs: Vec<(GroupElement, GroupElement)> =
        gens.iter().map(|h| (h.clone(), h.inverse())).collect();
    let mut class_of = vec![usize::MAX; group.len()];
    let mut classes: Vec<Vec<GroupElement>> = Vec::new();
    for (i, g) in group.iter().enumerate() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        let mut class = Vec::new();
        let mut stack = vec![g.clone()];
        class_of[i] = cid;
        while let Some(x) = stack.pop() {
            class.push(x.clone());
            for (h, hinv) in &gen_pairs {
                let y = h.compose(&x).compose(hinv);
                let yi = *index.get(&y).expect("group must be closed under conjugation");
                if class_of[yi] == usize::MAX {
                    class_of[yi] = cid;
                    stack.push(y);
                }
            }
        }
        class.sort();
        classes.push(class);
    }
    classes.sort_by(|a, b| a[0].cmp(&b[0]));
    classes
}

/// Centralizer of `s` inside `group`.
pub fn centralizer(group: &[GroupElement], s: &GroupElement) -> Vec<GroupElement> {
    group
        .iter()
        .filter(|g| g.compose(s) == s.compose(g))
        .cloned()
        .collect()
}

/// Generators for the named subgroups of the quintic (n = 4) automorphism
/// group used throughout the reports.
pub fn named_group_generators(name: &str) -> Result<Vec<GroupElement>> {
    let n = 4;
    let gens: Vec<&str> = match name {
        // pure even permutations
        "A5" => vec!["(1 2 3 4 5)", "(1 2 3)"],
        // full semidirect product of A5 with the diagonal twists
        "A5xH4" => vec![
            "(1 2 3 4 5)",
            "(1 2 3)",
            "h(1,4,0,0,0)",
            "h(0,1,4,0,0)",
            "h(0,0,1,4,0)",
        ],
        "G1" => vec!["h(1,4,0,0,0)", "h(0,0,1,4,0)"],
        "G2" => vec!["h(1,4,0,0,0)", "h(1,0,4,0,0)"],
        "G3" => vec!["h(1,1,0,0,3)", "h(1,3,1,0,0)"],
        "Z10" => vec!["(1 2)(3 4);0,0,1,1,3"],
        "Z15" => vec!["(1 2 3);0,0,0,1,4"],
        "D5a" => vec!["(1 2)(3 5)", "(1 2 3 4 5)"],
        "D5b" => vec!["h(1,4,0,0,0)", "(1 2)(3 4)"],
        _ => {
            return Err(GeomError::InvalidInput(format!(
                "unknown group name {:?} (expected A5, A5xH4, G1, G2, G3, Z10, Z15, D5a, D5b)",
                name
            )))
        }
    };
    gens.iter().map(|s| GroupElement::parse(s, n)).collect()
}
