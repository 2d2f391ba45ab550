/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include "efsmt/engine.hpp"
#include "efsmt/transforms.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace efsmt {

/* ---- Priority synthesis ------------------------------------------------ */

struct Transition {
	unsigned from;
	std::string action;
	unsigned to;
};

struct Component {
	unsigned states = 2;
	unsigned initial = 0;
	std::vector<Transition> transitions;
};

using GlobalState = std::vector<unsigned>;

/* (low, high): low ≺ high, i.e. low is blocked while high is enabled. */
using Priority = std::pair<std::string, std::string>;

struct ComponentSystem {
	std::vector<Component> components;
	std::vector<GlobalState> risk;
	/* Empty means every ordered pair of actions. */
	std::vector<Priority> candidates;
	/* Pairs the communication architecture cannot implement. */
	std::vector<Priority> forbidden;

	/* Action labels in first-appearance order. */
	std::vector<std::string> actions() const;
	std::vector<Priority> candidate_pairs() const;
	GlobalState initial() const;
	std::vector<GlobalState> all_states() const;
	/* Actions enabled in s, each with its component index. */
	std::vector<std::pair<std::string, std::size_t>> enabled(const GlobalState &s) const;
	/* Throws Error(Encoding) on duplicate labels or malformed states. */
	void validate() const;
};

/* A guarded state selector: when '<name>_val' holds, the template covers the
 * global states whose listed components match its selector bits. */
struct StateTemplate {
	std::string name;
	std::vector<std::size_t> components;
};

struct PriorityEncoding {
	EFProblem problem;
	std::map<Priority, VarId> priority_vars;
	std::vector<VarId> template_vars;	/* guards, selectors, primed selectors */
	/* Per component, the bits encoding its state (current and next). */
	std::vector<std::vector<VarId>> state_bits, next_bits;
	Formula in_x;	/* over current state bits and unprimed template vars */
};

/* The two-component resource example. */
ComponentSystem paper_priority_system(bool channel_restricted = false);
/* m over component 1, n over components 1 and 2. */
std::vector<StateTemplate> paper_priority_templates();

PriorityEncoding encode_priority(const ComponentSystem &sys,
                                 const std::vector<StateTemplate> &templates);

struct PrioritySolution {
	std::set<Priority> priorities;
	std::vector<GlobalState> invariant;
	Assignment templates;
};

PrioritySolution decode_priority(const ComponentSystem &sys, const PriorityEncoding &enc,
                                 const Assignment &witness);

/* Witness over the encoding's exists vars: the given priorities, the named
 * template variables (others false). A primed selector follows its
 * unprimed name. */
Assignment priority_witness(const PriorityEncoding &enc, const std::set<Priority> &priorities,
                            const std::map<std::string, bool> &template_values);

std::set<Priority> transitive_closure(const std::set<Priority> &prios);

struct PriorityOracle {
	enum class Kind { Safe, Unsafe, Deadlock };
	Kind kind = Kind::Safe;
	std::vector<GlobalState> trace;	/* Unsafe: initial state to a risk state */
	GlobalState state;		/* Deadlock */
	bool safe() const { return kind == Kind::Safe; }
};

/* Explicit reachability of the product under priority semantics. */
PriorityOracle oracle_priority(const ComponentSystem &sys, const std::set<Priority> &prios);

/* ---- Timed / hybrid templates ----------------------------------------- */

/* A parameter is either fixed or the name of a design variable. */
struct Param {
	std::optional<Rational> value;
	std::string name;

	static Param constant(Rational v) { return {std::move(v), {}}; }
	static Param variable(std::string n) { return {std::nullopt, std::move(n)}; }
	bool is_constant() const { return value.has_value(); }
};

struct Mode {
	Param rate;
	Rational clock_bound;	/* the mode invariant t ≤ clock_bound */
};

/* Jump guard lo ≤ t ≤ hi; t resets on every jump. */
struct Jump {
	std::size_t from, to;
	Param guard_lo, guard_hi;
};

struct HybridSystem {
	std::vector<Mode> modes;	/* exactly two: the mode is a single boolean */
	std::vector<Jump> jumps;
	Rational initial_h;
	Interval safe_h;
	/* Design parameters: name, sort. */
	std::vector<std::pair<std::string, Sort>> parameters;
	Interval h_range;	/* box of the universal h, h′ */
	Sort bound_sort;	/* sort of the template bounds l_m, u_m */
};

struct HybridEncoding {
	EFProblem problem;
	std::map<std::string, VarId> params;	/* design parameters */
	std::vector<VarId> lower, upper;	/* l_m, u_m per mode */
	std::vector<VarId> lower_next, upper_next;
	VarId mode, mode_next, h, h_next, t, delta;
};

/* The temperature controller: rate 2 in mode 0 (clock bound 10), rate γ in
 * mode 1 (clock bound 6), jumps on β ≤ t ≤ α and η ≤ t ≤ 6, h(0) = 100,
 * safe band [80, 120]. 'step' > 0 puts the exists side on that grid. */
HybridSystem paper_hybrid_system(const Rational &step = Rational(1, 3));

/* Template per mode: l_m ≤ h − rate_m·t ≤ u_m. Every jump guard also gets
 * the progress condition lo ≤ hi ≤ clock bound of its source mode. */
HybridEncoding encode_hybrid(const HybridSystem &sys);
HybridEncoding paper_hybrid(const Rational &step = Rational(1, 3));

/* Parameters by name, invariant bounds per mode, decoded from a witness. */
struct HybridSolution {
	std::map<std::string, Rational> params;
	std::vector<Interval> entry;	/* [l_m, u_m] */
};

HybridSolution decode_hybrid(const HybridSystem &sys, const HybridEncoding &enc,
                             const Assignment &w);
Assignment hybrid_witness(const HybridEncoding &enc, const HybridSolution &s);

struct SimulationReport {
	bool ok = true;
	unsigned steps = 0;
	unsigned jumps = 0;
	std::string failure;
};

/* Forward simulation with time step dt, jumping as soon as a guard opens.
 * Every visited state must lie in the decoded invariant and the safe band. */
SimulationReport simulate_hybrid(const HybridSystem &sys, const HybridSolution &s,
                                 unsigned steps = 10000, const Rational &dt = Rational(1, 16));

/* ---- BIBO / Routh ------------------------------------------------------- */

/* 'vars' declares the controllables (exists) and environment parameters
 * (forall); the matrix becomes the Routh first-column positivity of
 * Σ den[i]·s^(n−i). */
EFProblem encode_bibo(const std::vector<Polynomial> &den, EFProblem vars);
/* m·s² + k_p·s + k_i with m ∈ [600, 1200] and k_p, k_i ∈ [−100, 100]. */
EFProblem paper_bibo_problem();

/* ---- Lyapunov ----------------------------------------------------------- */

enum class LyapunovRoute { Bernstein, StrengthenedBV };

/* Scalar system ż = num(z)/den(z) around the equilibrium z = 0 with the
 * template V. The skeleton declares z (forall), r and the template
 * parameters (exists). */
struct LyapunovSpec {
	EFProblem skeleton;
	VarId z, r;
	Polynomial V, num, den;
	/* Exists-only conditions making V positive away from 0 (a > 0). */
	std::vector<Formula> conditions;
};

/* Bernstein: (−r < z < r) → −V′·num·den ≥ 0, an AG system. StrengthenedBV:
 * the guarantee split on the sign of its parameter factor, its z-set
 * written as intervals between rational roots, every atom strengthened by
 * 'step' and both sides discretized. */
EFProblem encode_lyapunov(const LyapunovSpec &spec, LyapunovRoute route,
                          const Rational &step = Rational(1, 32));

/* dz/dt = 2/(2+z) − z − 1 with V = a·z², a, r ∈ [0, 10], a > 0, r > 0. */
LyapunovSpec paper_lyapunov_spec(const Interval &z_box);
/* The strengthened bitvector system exactly as printed, a, r ∈ [0,10] and
 * z ∈ [−10, 10] on the step grid. */
EFProblem paper_lyapunov_printed(const Rational &step = Rational(1, 32));

/* ---- Wheeled inverted pendulum ----------------------------------------- */

struct PendulumParams {
	Rational J1 = Rational(1, 100), J2 = Rational(1, 50);
	Rational g = Rational(981, 100), r = Rational(21, 1000);
	Interval M2 = {Rational(1, 2), Rational(7, 10)};
	Interval l = {Rational(1, 10), Rational(1, 5)};
	Interval state = {-1, 1};		/* box of x1, x2 */
	Interval gains = {-100, 100};		/* k_p, k_d */
	Interval energy = {0, 10};		/* a, b */
	Interval radius = {0, 1};		/* x̄1, x̄2 */
	bool strict = true;			/* V̇ < 0 rather than V̇ ≤ 0 */
};

struct PendulumEncoding {
	EFProblem problem;
	VarId xb1, xb2, kp, kd, a, b, x1, x2, M2, l;
	Polynomial V;
	Polynomial theta_num, theta_den;	/* θ̈ = theta_num / theta_den */
	Polynomial vdot;			/* V̇ · theta_den */
};

PendulumEncoding pendulum_preset(const PendulumParams &params = {});

} // namespace efsmt
