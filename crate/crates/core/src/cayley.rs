//! Exploration of the Cayley graph of `W_Γ` (the 1-skeleton of the Davis
//! complex) and empirical geodesic divergence along periodic geodesics.
//!
//! Vertices of the Cayley graph are keyed by [`NormalForm`]s. Since a normal
//! form is a reduced word, its length is the distance to the identity, so
//! "outside the ball of radius r about b" is an O(1) test after translating
//! by `b⁻¹`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CayleyError, WordError};
use crate::exec::{self, Execution};
use crate::graph::SimplicialGraph;
use crate::words::{check_power_reduced, multiply_generator, normal_form, NormalForm, Word};

/// Default number of states a single query may intern.
pub const DEFAULT_STATE_BUDGET: usize = 250_000;

/// Environment variable overriding [`DEFAULT_STATE_BUDGET`].
pub const STATE_CAP_ENV: &str = "RACGLAB_STATE_CAP";

/// The state budget from `RACGLAB_STATE_CAP`, or the default.
pub fn state_budget_from_env() -> usize {
    std::env::var(STATE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_STATE_BUDGET)
}

/// A vertex of the Cayley graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub NormalForm);

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement(NormalForm::identity())
    }

    pub fn from_word(g: &SimplicialGraph, w: &Word) -> Self {
        GroupElement(normal_form(g, w))
    }

    pub fn key(&self) -> &NormalForm {
        &self.0
    }

    /// Distance to the identity.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn inverse(&self, g: &SimplicialGraph) -> Self {
        GroupElement::from_word(g, &self.0.as_word().inverse())
    }

    pub fn multiply(&self, g: &SimplicialGraph, other: &GroupElement) -> Self {
        GroupElement::from_word(g, &self.0.as_word().concat(&other.0.as_word()))
    }

    pub fn times_generator(&self, g: &SimplicialGraph, s: usize) -> Self {
        GroupElement(multiply_generator(g, &self.0, s))
    }

    pub fn display(&self, g: &SimplicialGraph) -> String {
        self.0.display(g)
    }
}

/// Word metric distance `d(a, b) = |a⁻¹ b|`.
pub fn distance(g: &SimplicialGraph, a: &GroupElement, b: &GroupElement) -> usize {
    a.inverse(g).multiply(g, b).length()
}

/// All elements within `radius` of the identity, with exact distances, by
/// breadth-first search. Fails once more than `budget` states are stored.
pub fn ball(
    g: &SimplicialGraph,
    radius: usize,
    budget: usize,
) -> Result<HashMap<GroupElement, usize>, CayleyError> {
    let mut dist = HashMap::new();
    dist.insert(GroupElement::identity(), 0usize);
    let mut frontier = vec![GroupElement::identity()];
    for level in 1..=radius {
        let mut next = Vec::new();
        for x in &frontier {
            for s in 0..g.len() {
                let y = x.times_generator(g, s);
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), level);
                    next.push(y);
                    if dist.len() > budget {
                        return Err(CayleyError::BudgetExhausted {
                            budget,
                            reached: level - 1,
                        });
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(dist)
}

/// Sphere sizes `|S(0)|, …, |S(radius)|`: the growth series truncated at
/// `radius`.
pub fn growth_series(
    g: &SimplicialGraph,
    radius: usize,
    budget: usize,
) -> Result<Vec<usize>, CayleyError> {
    let b = ball(g, radius, budget)?;
    let mut spheres = vec![0; radius + 1];
    for d in b.values() {
        spheres[*d] += 1;
    }
    Ok(spheres)
}

/// The point `p_i = w^i` on the periodic geodesic through the identity with
/// label `w w w …` (and `w⁻¹ w⁻¹ …` for negative `i`).
pub fn periodic_geodesic_point(
    g: &SimplicialGraph,
    w: &Word,
    i: i64,
) -> Result<GroupElement, CayleyError> {
    let power = i.unsigned_abs();
    if power > 0 && !check_power_reduced(g, w, power)? {
        return Err(WordError::NotGeodesic { power }.into());
    }
    let base = if i >= 0 { w.clone() } else { w.inverse() };
    Ok(GroupElement::from_word(g, &base.power(power as usize)))
}

/// Exploration limits for [`avoidant_distance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Only states within this distance of the basepoint are explored.
    pub region_cap: usize,
    /// Maximum number of states interned.
    pub state_budget: usize,
}

impl SearchLimits {
    /// Region cap `3·radius + 20` with the given budget.
    pub fn for_radius(radius: usize, state_budget: usize) -> Self {
        SearchLimits {
            region_cap: 3 * radius + 20,
            state_budget,
        }
    }
}

/// Why a search ended without an exact value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundReason {
    BudgetExhausted,
    /// A path was found inside the region but a shorter one might leave it.
    RegionTruncated,
}

/// Result of an avoidant-path search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Detour {
    Exact {
        length: usize,
        /// Vertices of a shortest admissible path, endpoints included.
        path: Vec<GroupElement>,
    },
    /// The true value is at least `bound`; `upper` is the best path found, if
    /// any.
    LowerBound {
        bound: usize,
        upper: Option<usize>,
        reason: BoundReason,
    },
    /// No admissible path exists at all.
    Unreachable,
}

impl Detour {
    pub fn exact(&self) -> Option<usize> {
        match self {
            Detour::Exact { length, .. } => Some(*length),
            _ => None,
        }
    }

    /// The exact value or the lower bound.
    pub fn value(&self) -> Option<usize> {
        match self {
            Detour::Exact { length, .. } => Some(*length),
            Detour::LowerBound { bound, .. } => Some(*bound),
            Detour::Unreachable => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AvoidantSearch {
    pub detour: Detour,
    pub states_explored: usize,
}

/// Length of a shortest path from `x` to `y` all of whose vertices lie at
/// distance at least `radius` from `b`. Distance exactly `radius` is allowed.
///
/// Best-first search ordered by `g + d(·, y)`; the word-metric distance to
/// `y` never overestimates the constrained distance and is consistent, so
/// the first time `y` is settled its cost is optimal within the region.
pub fn avoidant_distance(
    g: &SimplicialGraph,
    x: &GroupElement,
    y: &GroupElement,
    b: &GroupElement,
    radius: usize,
    limits: SearchLimits,
) -> Result<AvoidantSearch, CayleyError> {
    let b_inv = b.inverse(g);
    let x0 = b_inv.multiply(g, x);
    let y0 = b_inv.multiply(g, y);
    for e in [&x0, &y0] {
        if e.length() < radius {
            return Err(CayleyError::EndpointInsideBall {
                distance: e.length(),
                radius,
            });
        }
    }
    let cap = limits.region_cap.max(x0.length()).max(y0.length());
    let escape = (cap + 1 - x0.length()) + (cap + 1 - y0.length());
    let translate_back = |e: &GroupElement| b.multiply(g, e);

    if x0 == y0 {
        return Ok(AvoidantSearch {
            detour: Detour::Exact {
                length: 0,
                path: vec![translate_back(&x0)],
            },
            states_explored: 1,
        });
    }

    let y_inv_word = y0.0.as_word();
    let heuristic = |e: &GroupElement| -> usize {
        normal_form(g, &e.0.as_word().inverse().concat(&y_inv_word)).len()
    };

    let mut ids: HashMap<GroupElement, usize> = HashMap::new();
    let mut nodes: Vec<GroupElement> = Vec::new();
    let mut cost: Vec<usize> = Vec::new();
    let mut parent: Vec<usize> = Vec::new();
    let mut closed: Vec<bool> = Vec::new();
    let mut open = BinaryHeap::new();
    let mut truncated = false;
    let mut seq = 0usize;

    ids.insert(x0.clone(), 0);
    open.push(Reverse((heuristic(&x0), 0usize, seq, 0usize)));
    nodes.push(x0);
    cost.push(0);
    parent.push(usize::MAX);
    closed.push(false);

    while let Some(Reverse((f, c, _, id))) = open.pop() {
        if closed[id] || c > cost[id] {
            continue;
        }
        closed[id] = true;
        if nodes[id] == y0 {
            let mut path = vec![];
            let mut cur = id;
            while cur != usize::MAX {
                path.push(translate_back(&nodes[cur]));
                cur = parent[cur];
            }
            path.reverse();
            let detour = if c <= escape || !truncated {
                Detour::Exact { length: c, path }
            } else {
                Detour::LowerBound {
                    bound: escape,
                    upper: Some(c),
                    reason: BoundReason::RegionTruncated,
                }
            };
            return Ok(AvoidantSearch {
                detour,
                states_explored: nodes.len(),
            });
        }
        for s in 0..g.len() {
            let next = nodes[id].times_generator(g, s);
            let len = next.length();
            if len < radius {
                continue;
            }
            if len > cap {
                truncated = true;
                continue;
            }
            let nc = c + 1;
            let nid = match ids.get(&next) {
                Some(&nid) => {
                    if closed[nid] || cost[nid] <= nc {
                        continue;
                    }
                    cost[nid] = nc;
                    parent[nid] = id;
                    nid
                }
                None => {
                    if nodes.len() >= limits.state_budget {
                        let frontier = f.max(c);
                        return Ok(AvoidantSearch {
                            detour: Detour::LowerBound {
                                bound: frontier.min(escape),
                                upper: None,
                                reason: BoundReason::BudgetExhausted,
                            },
                            states_explored: nodes.len(),
                        });
                    }
                    let nid = nodes.len();
                    ids.insert(next.clone(), nid);
                    nodes.push(next);
                    cost.push(nc);
                    parent.push(id);
                    closed.push(false);
                    nid
                }
            };
            seq += 1;
            let h = heuristic(&nodes[nid]);
            open.push(Reverse((nc + h, nc, seq, nid)));
        }
    }
    let detour = if truncated {
        Detour::LowerBound {
            bound: escape,
            upper: None,
            reason: BoundReason::RegionTruncated,
        }
    } else {
        Detour::Unreachable
    };
    Ok(AvoidantSearch {
        detour,
        states_explored: nodes.len(),
    })
}

/// One measurement of `Div^γ(ρ)` at `ρ = |w|·r`.
#[derive(Clone, Debug)]
pub struct DivergenceSample {
    pub r: usize,
    pub radius: usize,
    pub detour: Detour,
    pub endpoints: (GroupElement, GroupElement),
    pub states_explored: usize,
}

impl DivergenceSample {
    /// `r,radius,detour_or_bound,exact,states`
    pub fn csv_row(&self) -> String {
        let value = self
            .detour
            .value()
            .map(|v| v.to_string())
            .unwrap_or_else(|| "inf".to_string());
        format!(
            "{},{},{},{},{}",
            self.r,
            self.radius,
            value,
            self.detour.exact().is_some(),
            self.states_explored
        )
    }
}

pub const CSV_HEADER: &str = "r,radius,detour_or_bound,exact,states";

/// Least-squares fits of the exact samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeFit {
    /// Slope of `log(detour)` against `log(r)`.
    pub degree: f64,
    pub loglog_r2: f64,
    /// Slope of `log(detour)` against `r`.
    pub loglinear_rate: f64,
    pub loglinear_r2: f64,
    pub samples_used: usize,
    pub label: &'static str,
}

#[derive(Clone, Debug)]
pub struct DivergenceProfile {
    pub samples: Vec<DivergenceSample>,
    pub fit: Option<DegreeFit>,
}

impl DivergenceProfile {
    pub fn fit_json(&self) -> Value {
        let lower_bounds = self
            .samples
            .iter()
            .filter(|s| s.detour.exact().is_none())
            .count();
        json!({
            "fit": self.fit,
            "fit_available": self.fit.is_some(),
            "exact_samples": self.samples.len() - lower_bounds,
            "lower_bound_samples": lower_bounds,
        })
    }
}

/// Ordinary least squares: (slope, R²). `None` for fewer than two points or
/// no spread in `x`.
pub fn linear_fit(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Some((slope, r2))
}

/// Fit over exact samples with `r ≥ 2`; needs at least three.
pub fn fit_degree(samples: &[DivergenceSample]) -> Option<DegreeFit> {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.r >= 2)
        .filter_map(|s| s.detour.exact().filter(|&d| d > 0).map(|d| (s.r as f64, d as f64)))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let loglog: Vec<(f64, f64)> = pts.iter().map(|&(r, d)| (r.ln(), d.ln())).collect();
    let loglin: Vec<(f64, f64)> = pts.iter().map(|&(r, d)| (r, d.ln())).collect();
    let (degree, loglog_r2) = linear_fit(&loglog)?;
    let (loglinear_rate, loglinear_r2) = linear_fit(&loglin)?;
    let label = if loglinear_r2 > loglog_r2 {
        "exponential-like"
    } else {
        "polynomial-like"
    };
    Some(DegreeFit {
        degree,
        loglog_r2,
        loglinear_rate,
        loglinear_r2,
        samples_used: pts.len(),
        label,
    })
}

/// Samples `Div^γ(|w|·r)` for `r` in `r_min..=r_max` along the periodic
/// geodesic labeled by `w`, with basepoint the identity. Each radius is an
/// independent query and runs under `exec`.
pub fn divergence_profile(
    g: &SimplicialGraph,
    w: &Word,
    r_min: usize,
    r_max: usize,
    state_budget: usize,
    exec: Execution,
) -> Result<DivergenceProfile, CayleyError> {
    if r_max > 0 && !check_power_reduced(g, w, r_max as u64)? {
        return Err(WordError::NotGeodesic { power: r_max as u64 }.into());
    }
    let rs: Vec<usize> = (r_min.max(1)..=r_max).collect();
    let results = exec::map(exec, rs, |r| -> Result<DivergenceSample, CayleyError> {
        let radius = w.len() * r;
        let x = periodic_geodesic_point(g, w, r as i64)?;
        let y = periodic_geodesic_point(g, w, -(r as i64))?;
        let limits = SearchLimits::for_radius(radius, state_budget);
        let search = avoidant_distance(g, &x, &y, &GroupElement::identity(), radius, limits)?;
        Ok(DivergenceSample {
            r,
            radius,
            detour: search.detour,
            endpoints: (x, y),
            states_explored: search.states_explored,
        })
    });
    let samples = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let fit = fit_degree(&samples);
    Ok(DivergenceProfile { samples, fit })
}
