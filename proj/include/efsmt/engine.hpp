/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include "efsmt/bernstein.hpp"
#include "efsmt/session.hpp"

#include <optional>
#include <string>
#include <vector>

namespace efsmt {

enum class Strategy { LA_LA, LA_BERNSTEIN, FIXED_FIXED, AUTO };

const char *strategy_name(Strategy s);	/* "la-la", ... */
std::optional<Strategy> parse_strategy(std::string_view s);

struct EngineConfig {
	unsigned max_iterations = 1000;
	Strategy strategy = Strategy::AUTO;
	bool extrapolation = true;
	unsigned extrapolation_window = 4;
	Rational extrapolation_ratio = Rational(1, 2);
	Rational fixed_step = Rational(1, 32);
	unsigned bernstein_max_depth = 10;
	bool verify_witness = true;
	bool generalize = true;
	/* Also learn the projection of each counterexample region over the real
	 * universal variables (see project_counterexample). */
	bool projection = false;
	bool trace = false;
	BackendOptions backend;	/* kind Linear = internal, External = SMT-LIB process */
};

struct EngineStats {
	unsigned iterations = 0;
	unsigned counterexamples = 0;
	unsigned f_checks = 0;
	unsigned extrapolation_blocks = 0;
	std::uint64_t e_nodes = 0;
	std::uint64_t f_nodes = 0;
	std::uint64_t bernstein_boxes = 0;
};

struct TraceStep {
	Assignment candidate;
	std::optional<Assignment> counterexample;	/* generalized, forall vars only */
	std::optional<Formula> learned;
	std::optional<Formula> blocked;		/* extrapolation block, if any */
	std::optional<Formula> projected;	/* with cfg.projection */
};

struct Verdict {
	enum class Kind { Valid, Invalid, Unknown };

	Kind kind = Kind::Unknown;
	Assignment witness;		/* Valid: total over the exists vars */
	std::string reason;		/* Unknown */
	bool verification_inconclusive = false;
	Strategy strategy = Strategy::AUTO;
	EngineStats stats;
	std::vector<TraceStep> trace;	/* filled when cfg.trace */

	bool valid() const { return kind == Kind::Valid; }
	bool invalid() const { return kind == Kind::Invalid; }
	bool unknown() const { return kind == Kind::Unknown; }
};

const char *verdict_name(Verdict::Kind k);	/* "valid", "invalid", "unknown" */

/* The concrete strategy for p; throws Error(Config) with a remediation hint
 * when the requested (or every automatic) strategy does not fit. */
Strategy resolve_strategy(const EFProblem &p, Strategy requested);

Verdict solve(const EFProblem &p, const EngineConfig &cfg = {});

/* Conjuncts of the matrix over exists variables only, and the rest. */
struct MatrixSplit {
	std::vector<Formula> exists_only;
	Formula rest;
};
MatrixSplit split_matrix(const EFProblem &p);

/* One refutation attempt of a total candidate: Unsat means the candidate
 * is a witness, Sat carries a total counterexample over the forall vars. */
CheckResult f_check(const Assignment &candidate, const EFProblem &p, const EngineConfig &cfg);

/* φ with the counterexample substituted. Forall variables left unbound are
 * instantiated at both ends of their range when φ is linear in them (up to
 * four such variables), otherwise bound to 'completion'. */
Formula learn(const Assignment &cex, const EFProblem &p, const Assignment &completion = {});
Formula learn_from(const Formula &phi, const Assignment &cex, const EFProblem &p,
                   const Assignment &completion);

/* ¬∃ȳ I(x̄, ȳ) for an implicant I of ¬φ at (candidate, cex), where ȳ are the
 * real universal variables with constant coefficients in I (the others keep
 * their counterexample values). Exact Fourier-Motzkin projection, so every
 * witness satisfies the result and the candidate does not. nullopt when the
 * implicant is not linear after fixing the other variables. */
std::optional<Formula> project_counterexample(const Formula &phi, const Assignment &candidate,
                                              const Assignment &cex, const EFProblem &p);
/* A blocking formula for a sub-box of candidates that cannot contain a
 * witness, found from geometrically converging candidate and counterexample
 * sequences. */
std::optional<Formula> extrapolate(const std::vector<Assignment> &candidates,
                                   const std::vector<Assignment> &counterexamples,
                                   const EFProblem &p, const EngineConfig &cfg);

enum class WitnessCheck { Holds, Fails, Inconclusive };
const char *witness_check_name(WitnessCheck w);

/* Independent check that w is a witness: domains, exists-only conjuncts,
 * random sampling (refutation only), then exhaustive enumeration, a fresh
 * linear session, or the Bernstein checker depending on the problem shape. */
WitnessCheck verify_witness(const EFProblem &p, const Assignment &w, const EngineConfig &cfg = {});

} // namespace efsmt
