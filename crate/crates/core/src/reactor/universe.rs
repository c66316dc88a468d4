use std::cmp::Ordering;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::{check_permutation, format_perm, is_permutation, random_permutation};
use crate::problems::{Instance, ProblemKind};

use super::config::ReactorConfig;
use super::molecule::{GroupId, Molecule};
use super::reactions::{react_cross, react_same, react_wall, wall_direction};

/// Mass band used by the saturation test when the group best is exactly zero.
const ZERO_BAND: f64 = 1e-9;

/// Guards `ceil` against products like `0.1 * 30 = 3.0000000000000004`.
fn ceil_count(fraction: f64, of: usize) -> usize {
    (fraction * of as f64 - 1e-9).ceil().max(0.0) as usize
}

/// One problem to be solved inside a universe.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub name: String,
    pub instance: Instance,
    pub capacity: usize,
}

impl GroupSpec {
    pub fn new(name: impl Into<String>, instance: Instance, capacity: usize) -> Self {
        GroupSpec {
            name: name.into(),
            instance,
            capacity,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProblemGroup {
    pub id: GroupId,
    pub name: String,
    pub instance: Instance,
    pub capacity: usize,
    pub frozen: bool,
    pub saturated_at: Option<u64>,
    /// Epochs since the group best last improved, counting the current one.
    pub stale_epochs: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReactionCounts {
    /// Same-problem collisions.
    pub r1: u64,
    /// Cross-problem collisions this group took part in.
    pub r2: u64,
    /// Wall collisions.
    pub r3: u64,
    /// Molecules replaced by decay.
    pub decayed: u64,
}

impl std::ops::AddAssign for ReactionCounts {
    fn add_assign(&mut self, o: Self) {
        self.r1 += o.r1;
        self.r2 += o.r2;
        self.r3 += o.r3;
        self.decayed += o.decayed;
    }
}

/// Locates a molecule: group and index in that group's mass-sorted pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MolRef {
    pub group: GroupId,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpochStats {
    /// Epoch number after this epoch completed.
    pub epoch: u64,
    pub best_mass: Vec<f64>,
    pub r1: u64,
    pub r2: u64,
    pub r3: u64,
    pub frozen: Vec<bool>,
    /// True when every group was already frozen and nothing happened.
    pub terminal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupOutcome {
    pub name: String,
    pub kind: ProblemKind,
    pub best_perm: Vec<usize>,
    pub best_mass: f64,
    pub saturation_epoch: Option<u64>,
    pub counts: ReactionCounts,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub epochs: u64,
    pub groups: Vec<GroupOutcome>,
}

/// The reactor vessel.
///
/// Molecules are stored per group, each pool sorted by ascending mass with
/// younger molecules first among equal masses. The heaviest, oldest molecule
/// is therefore always last, which is what trimming removes.
#[derive(Debug, Clone)]
pub struct Universe {
    config: ReactorConfig,
    groups: Vec<ProblemGroup>,
    pools: Vec<Vec<Molecule>>,
    counts: Vec<ReactionCounts>,
    epoch: u64,
    next_birth: u64,
    rng: ChaCha8Rng,
}

fn pool_order(a: &Molecule, b: &Molecule) -> Ordering {
    a.mass
        .total_cmp(&b.mass)
        .then_with(|| b.birth.cmp(&a.birth))
}

/// Builds a universe holding `capacity` random molecules per group.
pub fn init_universe(groups: Vec<GroupSpec>, config: ReactorConfig) -> Result<Universe> {
    Universe::new(groups, config)
}

impl Universe {
    pub fn new(specs: Vec<GroupSpec>, config: ReactorConfig) -> Result<Self> {
        let mut u = Self::empty(specs, config)?;
        for g in 0..u.groups.len() {
            let pool = (0..u.groups[g].capacity)
                .map(|_| u.fresh_molecule(GroupId(g)))
                .collect();
            u.pools[g] = pool;
            u.sort_pool(g);
        }
        Ok(u)
    }

    /// Builds a universe from explicit starting populations, one list of
    /// permutations per group, each exactly `capacity` long.
    pub fn with_population(
        specs: Vec<GroupSpec>,
        config: ReactorConfig,
        population: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let mut u = Self::empty(specs, config)?;
        if population.len() != u.groups.len() {
            return Err(Error::Config(format!(
                "{} populations given for {} groups",
                population.len(),
                u.groups.len()
            )));
        }
        for (g, perms) in population.into_iter().enumerate() {
            let group = &u.groups[g];
            if perms.len() != group.capacity {
                return Err(Error::Config(format!(
                    "group {:?} needs {} molecules, got {}",
                    group.name,
                    group.capacity,
                    perms.len()
                )));
            }
            for perm in perms {
                check_permutation(&perm, u.groups[g].instance.size())?;
                let mut m = Molecule::new(GroupId(g), perm, &u.groups[g].instance);
                m.birth = u.next_birth;
                u.next_birth += 1;
                u.pools[g].push(m);
            }
            u.sort_pool(g);
        }
        Ok(u)
    }

    fn empty(specs: Vec<GroupSpec>, config: ReactorConfig) -> Result<Self> {
        config.validate()?;
        if specs.is_empty() {
            return Err(Error::Config("a universe needs at least one problem group".into()));
        }
        if let Some(s) = specs.iter().find(|s| s.capacity < 2) {
            return Err(Error::Config(format!(
                "group {:?} has capacity {}, at least 2 required",
                s.name, s.capacity
            )));
        }
        let n = specs.len();
        let mut u = Universe {
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            config,
            groups: Vec::with_capacity(n),
            pools: vec![Vec::new(); n],
            counts: vec![ReactionCounts::default(); n],
            epoch: 0,
            next_birth: 0,
        };
        for (i, s) in specs.into_iter().enumerate() {
            u.groups.push(ProblemGroup {
                id: GroupId(i),
                name: s.name,
                instance: s.instance,
                capacity: s.capacity,
                frozen: false,
                saturated_at: None,
                stale_epochs: 0,
            });
        }
        Ok(u)
    }

    fn fresh_molecule(&mut self, g: GroupId) -> Molecule {
        let inst = &self.groups[g.0].instance;
        let perm = random_permutation(inst.size(), &mut self.rng);
        let mut m = Molecule::new(g, perm, inst);
        m.birth = self.next_birth;
        self.next_birth += 1;
        m
    }

    fn sort_pool(&mut self, g: usize) {
        self.pools[g].sort_by(pool_order);
    }

    pub fn config(&self) -> &ReactorConfig {
        &self.config
    }

    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    pub fn groups(&self) -> &[ProblemGroup] {
        &self.groups
    }

    pub fn group(&self, g: GroupId) -> &ProblemGroup {
        &self.groups[g.0]
    }

    /// Molecules of a group, lightest first.
    pub fn molecules(&self, g: GroupId) -> &[Molecule] {
        &self.pools[g.0]
    }

    pub fn molecule(&self, r: MolRef) -> &Molecule {
        &self.pools[r.group.0][r.index]
    }

    pub fn best(&self, g: GroupId) -> &Molecule {
        &self.pools[g.0][0]
    }

    pub fn counts(&self, g: GroupId) -> ReactionCounts {
        self.counts[g.0]
    }

    pub fn total_molecules(&self) -> usize {
        self.pools.iter().map(Vec::len).sum()
    }

    pub fn all_frozen(&self) -> bool {
        self.groups.iter().all(|g| g.frozen)
    }

    /// Marks a group as frozen; no reaction touches it afterwards.
    pub fn freeze(&mut self, g: GroupId) {
        let group = &mut self.groups[g.0];
        if !group.frozen {
            group.frozen = true;
            group.saturated_at.get_or_insert(self.epoch);
        }
    }

    /// Rank weight of every molecule in a pool: `k - r + 1` with `r` the
    /// 1-based competition rank, so equal masses share a weight.
    fn rank_weights(pool: &[Molecule]) -> impl Iterator<Item = u64> + '_ {
        let k = pool.len() as u64;
        let mut rank = 0u64;
        pool.iter().enumerate().map(move |(i, m)| {
            if i == 0 || m.mass != pool[i - 1].mass {
                rank = i as u64 + 1;
            }
            k - rank + 1
        })
    }

    /// Selection weights of all unfrozen molecules, in pool order.
    pub fn selection_weights(&self) -> Vec<(MolRef, u64)> {
        let mut out = Vec::with_capacity(self.total_molecules());
        for (g, pool) in self.pools.iter().enumerate() {
            if self.groups[g].frozen {
                continue;
            }
            for (index, w) in Self::rank_weights(pool).enumerate() {
                out.push((
                    MolRef {
                        group: GroupId(g),
                        index,
                    },
                    w,
                ));
            }
        }
        out
    }

    /// Draws two distinct molecules with rank-biased probability. Returns
    /// `None` once every group is frozen.
    pub fn select_pair(&mut self) -> Option<(MolRef, MolRef)> {
        let weights = self.selection_weights();
        if weights.len() < 2 {
            return None;
        }
        let total: u64 = weights.iter().map(|(_, w)| w).sum();
        let pick = |rng: &mut ChaCha8Rng, total: u64, skip: Option<usize>| {
            let mut u = rng.random_range(0..total);
            for (i, (_, w)) in weights.iter().enumerate() {
                if Some(i) == skip {
                    continue;
                }
                if u < *w {
                    return i;
                }
                u -= w;
            }
            unreachable!("weights exhausted")
        };
        let first = pick(&mut self.rng, total, None);
        let second = pick(&mut self.rng, total - weights[first].1, Some(first));
        Some((weights[first].0, weights[second].0))
    }

    /// Adds products to their groups and trims each touched group back to
    /// capacity by dropping its heaviest (then oldest) molecules.
    pub fn insert_and_trim(&mut self, products: Vec<Molecule>) -> Result<()> {
        for p in &products {
            let Some(group) = self.groups.get(p.group.0) else {
                return Err(Error::contract(format!("product for unknown group {}", p.group)));
            };
            if group.frozen {
                return Err(Error::contract(format!("product for frozen group {}", p.group)));
            }
            if !is_permutation(&p.perm, group.instance.size()) {
                return Err(Error::contract(format!("product {:?} is not a valid permutation", p.perm)));
            }
        }
        let mut touched = Vec::new();
        for mut p in products {
            p.birth = self.next_birth;
            self.next_birth += 1;
            let g = p.group.0;
            if !touched.contains(&g) {
                touched.push(g);
            }
            self.pools[g].push(p);
        }
        for g in touched {
            self.sort_pool(g);
            let cap = self.groups[g].capacity;
            self.pools[g].truncate(cap);
        }
        Ok(())
    }

    /// Replaces the heaviest molecules of every unfrozen group with fresh
    /// random ones. The lightest molecule is always kept.
    pub fn decay(&mut self) {
        for g in 0..self.groups.len() {
            if self.groups[g].frozen {
                continue;
            }
            let cap = self.groups[g].capacity;
            let count = ceil_count(self.config.decay_fraction, cap).min(self.pools[g].len() - 1);
            if count == 0 {
                continue;
            }
            let keep = self.pools[g].len() - count;
            self.pools[g].truncate(keep);
            for _ in 0..count {
                let m = self.fresh_molecule(GroupId(g));
                self.pools[g].push(m);
            }
            self.counts[g].decayed += count as u64;
            self.sort_pool(g);
        }
    }

    /// True iff at least `saturation_share` of the group's molecules lie
    /// within the relative mass band above the group's best.
    pub fn is_saturated(&self, g: GroupId) -> bool {
        let pool = &self.pools[g.0];
        let best = pool[0].mass;
        let limit = if best == 0.0 {
            ZERO_BAND
        } else {
            best * (1.0 + self.config.saturation_tolerance)
        };
        let within = pool.iter().filter(|m| m.mass <= limit).count();
        within as f64 >= self.config.saturation_share * pool.len() as f64 - 1e-9
    }

    fn reactions_per_epoch(&self) -> usize {
        self.config
            .reactions_per_epoch
            .unwrap_or_else(|| self.groups.iter().map(|g| g.capacity).sum())
    }

    fn collide(&mut self, a: MolRef, b: MolRef) -> Result<()> {
        let (products, g1, g2) = if a.group == b.group {
            let g = a.group;
            let inst = &self.groups[g.0].instance;
            let l = self.rng.random_range(0..inst.size());
            let (c1, c2) = react_same(self.molecule(a), self.molecule(b), l, inst)?;
            self.counts[g.0].r1 += 1;
            (vec![c1, c2], g, None)
        } else {
            let ia = &self.groups[a.group.0].instance;
            let ib = &self.groups[b.group.0].instance;
            let la = self.rng.random_range(0..ia.size());
            let lb = self.rng.random_range(0..ib.size());
            let (c1, c2) = react_cross((self.molecule(a), ia), (self.molecule(b), ib), la, lb)?;
            (vec![c1, c2], a.group, Some(b.group))
        };
        if let Some(g2) = g2 {
            self.counts[g1.0].r2 += 1;
            self.counts[g2.0].r2 += 1;
        }
        self.insert_and_trim(products)
    }

    /// Wall collisions for the heavy tail of every unfrozen group. Products
    /// replace their reactants in place; the lightest molecule is exempt.
    fn wall_phase(&mut self) -> Result<u64> {
        let mut hits = 0;
        for g in 0..self.groups.len() {
            if self.groups[g].frozen {
                continue;
            }
            let k = self.pools[g].len();
            let heavy = ceil_count(self.config.heavy_quantile, k).min(k - 1);
            let mut changed = false;
            for idx in k - heavy..k {
                if self.rng.random::<f64>() >= self.config.wall_probability {
                    continue;
                }
                let inst = &self.groups[g].instance;
                let l = self.rng.random_range(0..inst.size());
                let dir = wall_direction(self.rng.random::<f64>());
                let mut product = react_wall(&self.pools[g][idx], l, dir, inst)?;
                product.birth = self.next_birth;
                self.next_birth += 1;
                self.pools[g][idx] = product;
                self.counts[g].r3 += 1;
                hits += 1;
                changed = true;
            }
            if changed {
                self.sort_pool(g);
            }
        }
        Ok(hits)
    }

    /// One iteration of the reactor: collisions, wall hits, decay, then
    /// saturation checks.
    pub fn run_epoch(&mut self) -> Result<EpochStats> {
        if self.all_frozen() {
            return Ok(self.stats(0, 0, 0, true));
        }
        let before: Vec<ReactionCounts> = self.counts.clone();
        let best_before: Vec<f64> = self.pools.iter().map(|p| p[0].mass).collect();
        for _ in 0..self.reactions_per_epoch() {
            let Some((a, b)) = self.select_pair() else {
                break;
            };
            self.collide(a, b)?;
        }
        let r3 = self.wall_phase()?;
        self.decay();
        self.epoch += 1;
        for g in 0..self.groups.len() {
            if self.groups[g].frozen {
                continue;
            }
            let stale = if self.pools[g][0].mass < best_before[g] {
                1
            } else {
                self.groups[g].stale_epochs + 1
            };
            self.groups[g].stale_epochs = stale;
            if stale >= self.config.saturation_patience && self.is_saturated(GroupId(g)) {
                self.freeze(GroupId(g));
            }
        }
        let r1: u64 = self.counts.iter().zip(&before).map(|(a, b)| a.r1 - b.r1).sum();
        // every cross collision is counted once per participating group
        let r2: u64 = self.counts.iter().zip(&before).map(|(a, b)| a.r2 - b.r2).sum::<u64>() / 2;
        Ok(self.stats(r1, r2, r3, false))
    }

    fn stats(&self, r1: u64, r2: u64, r3: u64, terminal: bool) -> EpochStats {
        EpochStats {
            epoch: self.epoch,
            best_mass: self.pools.iter().map(|p| p[0].mass).collect(),
            r1,
            r2,
            r3,
            frozen: self.groups.iter().map(|g| g.frozen).collect(),
            terminal,
        }
    }

    /// Runs epochs until every group is frozen or `max_epochs` is reached.
    pub fn run_until(&mut self, max_epochs: u64) -> Result<RunReport> {
        while self.epoch < max_epochs && !self.all_frozen() {
            self.run_epoch()?;
        }
        Ok(self.report())
    }

    /// [`Universe::run_until`] with the configured epoch budget.
    pub fn run_until_done(&mut self) -> Result<RunReport> {
        self.run_until(self.config.max_epochs)
    }

    pub fn report(&self) -> RunReport {
        RunReport {
            epochs: self.epoch,
            groups: self
                .groups
                .iter()
                .zip(&self.pools)
                .zip(&self.counts)
                .map(|((g, pool), counts)| GroupOutcome {
                    name: g.name.clone(),
                    kind: g.instance.kind(),
                    best_perm: pool[0].perm.clone(),
                    best_mass: pool[0].mass,
                    saturation_epoch: g.saturated_at,
                    counts: *counts,
                })
                .collect(),
        }
    }

    /// Checks permutation validity, mass coherence, capacity and ordering.
    pub fn check_invariants(&self) -> Result<()> {
        for (g, pool) in self.groups.iter().zip(&self.pools) {
            if pool.len() != g.capacity {
                return Err(Error::Invariant(format!(
                    "group {} holds {} molecules, capacity {}",
                    g.name,
                    pool.len(),
                    g.capacity
                )));
            }
            for m in pool {
                if m.group != g.id || !is_permutation(&m.perm, g.instance.size()) {
                    return Err(Error::Invariant(format!("invalid molecule {:?} in group {}", m.perm, g.name)));
                }
                let mass = g.instance.mass(&m.perm);
                if mass.to_bits() != m.mass.to_bits() {
                    return Err(Error::Invariant(format!(
                        "cached mass {} differs from {} in group {}",
                        m.mass, mass, g.name
                    )));
                }
            }
            if pool.windows(2).any(|w| pool_order(&w[0], &w[1]) == Ordering::Greater) {
                return Err(Error::Invariant(format!("pool of group {} is unsorted", g.name)));
            }
        }
        Ok(())
    }

    /// Structured text dump of the complete state, RNG included.
    pub fn snapshot(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(s, "universe epoch={} next_birth={}", self.epoch, self.next_birth);
        let seed: String = self.rng.get_seed().iter().map(|b| format!("{b:02x}")).collect();
        let _ = writeln!(
            s,
            "rng seed={seed} stream={} word_pos={}",
            self.rng.get_stream(),
            self.rng.get_word_pos()
        );
        let _ = writeln!(
            s,
            "config seed={} reactions_per_epoch={} wall_probability={} heavy_quantile={} decay_fraction={} saturation_share={} saturation_tolerance={} saturation_patience={} max_epochs={}",
            c.seed,
            self.reactions_per_epoch(),
            c.wall_probability,
            c.heavy_quantile,
            c.decay_fraction,
            c.saturation_share,
            c.saturation_tolerance,
            c.saturation_patience,
            c.max_epochs
        );
        for (g, pool) in self.groups.iter().zip(&self.pools) {
            let sat = g.saturated_at.map_or("none".to_string(), |e| e.to_string());
            let _ = writeln!(
                s,
                "group id={} name={} kind={} size={} capacity={} frozen={} saturated_at={sat} stale={}",
                g.id,
                g.name,
                g.instance.kind(),
                g.instance.size(),
                g.capacity,
                g.frozen,
                g.stale_epochs
            );
            for m in pool {
                let _ = writeln!(
                    s,
                    "molecule group={} birth={} mass={} perm={}",
                    m.group,
                    m.birth,
                    m.mass,
                    format_perm(&m.perm)
                );
            }
        }
        s
    }
}
