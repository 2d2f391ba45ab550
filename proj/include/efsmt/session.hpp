/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include "efsmt/error.hpp"
#include "efsmt/formula.hpp"

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace efsmt {

struct CheckResult {
	enum class Status { Sat, Unsat, Unknown };

	Status status = Status::Unknown;
	Assignment model;	/* Sat only; may be partial */
	std::string reason;	/* Unknown only */

	static CheckResult sat(Assignment m) { return {Status::Sat, std::move(m), {}}; }
	static CheckResult unsat() { return {Status::Unsat, {}, {}}; }
	static CheckResult unknown(std::string why) { return {Status::Unknown, {}, std::move(why)}; }

	bool is_sat() const { return status == Status::Sat; }
	bool is_unsat() const { return status == Status::Unsat; }
	bool is_unknown() const { return status == Status::Unknown; }
};

struct SessionStats {
	std::uint64_t checks = 0;
	std::uint64_t conflicts = 0;
	std::uint64_t nodes = 0;	/* search nodes, backend specific */
};

enum class BackendKind { Linear, Enum, External };

struct BackendOptions {
	BackendKind kind = BackendKind::Linear;
	std::string command;	/* External: shell-free argv string */
	std::chrono::seconds timeout{30};
};

/* A stack of asserted formulas over a fixed variable set. Sort bounds of the
 * variables are implicit assertions. */
class SolverSession {
public:
	explicit SolverSession(std::vector<VarDecl> vars);
	virtual ~SolverSession();
	SolverSession(const SolverSession &) = delete;
	SolverSession &operator=(const SolverSession &) = delete;

	void push();
	void pop();
	void assert_formula(const Formula &f);
	CheckResult check();

	std::size_t depth() const { return frames_.size() - 1; }
	/* Live assertions, outermost frame first. */
	std::vector<Formula> assertions() const;
	const std::vector<VarDecl> &vars() const { return vars_; }
	const SessionStats &stats() const { return stats_; }

	/* A new empty session of the same backend over the same variables. */
	virtual std::unique_ptr<SolverSession> fresh() const = 0;
	virtual const char *backend_name() const = 0;

protected:
	virtual CheckResult do_check(const std::vector<Formula> &live) = 0;
	virtual void on_push() {}
	virtual void on_pop() {}
	virtual void on_assert(const Formula &) {}
	const std::vector<std::vector<Formula>> &frames() const { return frames_; }

	std::vector<VarDecl> vars_;
	SessionStats stats_;

private:
	std::vector<std::vector<Formula>> frames_;
};

std::unique_ptr<SolverSession> make_linear_session(std::vector<VarDecl> vars);
std::unique_ptr<SolverSession> make_enum_session(std::vector<VarDecl> vars);
std::unique_ptr<SolverSession> make_external_session(std::vector<VarDecl> vars,
                                                     std::string command,
                                                     std::chrono::seconds timeout);
std::unique_ptr<SolverSession> make_session(const BackendOptions &opt, std::vector<VarDecl> vars);

/* The formula v = value (numeric) or the literal v / ¬v (boolean). */
Formula binding_formula(VarId v, const Value &value);
Formula bindings_formula(const Assignment &a);

/* Drop bindings of 'model' one variable at a time (declaration order) while
 * every value of the dropped variables still satisfies 'goal'. Each attempt
 * is one check of the negated goal in a fresh auxiliary session. */
Assignment generalize_model(const SolverSession &s, const Assignment &model, const Formula &goal);

namespace detail {

/* Top-level unit bindings (v = c, v, ¬v) propagated to a fixpoint. */
struct Preprocessed {
	bool conflict = false;
	Assignment bindings;
	std::vector<Formula> rest;
};

Preprocessed propagate_units(const std::vector<Formula> &live, const std::vector<VarDecl> &vars);

} // namespace detail

} // namespace efsmt
