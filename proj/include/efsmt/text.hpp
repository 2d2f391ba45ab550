/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include "efsmt/engine.hpp"
#include "efsmt/problem.hpp"
#include "efsmt/sexpr.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace efsmt {

struct PresetCall {
	std::string name;
	std::vector<std::pair<std::string, std::string>> args;	/* key=value, file order */
	SourceLoc loc;

	const std::string *arg(std::string_view key) const;
	friend bool operator==(const PresetCall &a, const PresetCall &b)
	{
		return a.name == b.name && a.args == b.args;
	}
};

/*
 *   file    := command*
 *   command := (declare-exists NAME SORT) | (declare-forall NAME SORT)
 *            | (assume F) | (guarantee F) | (constrain F)
 *            | (set-strategy la-la|la-bernstein|fixed-fixed|auto)
 *            | (preset NAME KEY=VALUE*)
 *   SORT    := bool | int LO HI | real LO HI | fixed LO HI STEP
 *   F       := true | false | BOOLVAR | (not F) | (and F*) | (or F*)
 *            | (=> F F+) | (iff F F) | (<=> F F) | (= F F)
 *            | (< T T+) | (<= T T+) | (> T T+) | (>= T T+) | (= T T+)
 *            | (distinct T T+) | (!= T T+)
 *   T       := NUMBER | VAR | (+ T+) | (- T+) | (* T+) | (^ T K) | (/ T C)
 *
 * Numbers are integers, p/q or decimals. A preset file holds no
 * declarations or constraints.
 */
struct ProblemFile {
	EFProblem declarations;	/* matrix unused */
	std::vector<Formula> assume, guarantee, constrain;
	std::optional<Strategy> strategy;
	std::optional<PresetCall> preset;

	/* (⋀ assume → ⋀ guarantee) ∧ ⋀ constrain */
	Formula matrix() const;
	EFProblem problem() const;

	friend bool operator==(const ProblemFile &a, const ProblemFile &b);
};

/* Throws ParseError with the line and column of the offending expression. */
ProblemFile parse_problem(std::string_view text);

/* Canonical form: one command per line, declarations in id order. */
std::string print_problem(const ProblemFile &f);

/* A file whose only constraint is p's matrix. */
ProblemFile problem_file(const EFProblem &p);

std::string print_formula(const Formula &f, const EFProblem &p);
std::string print_term(const Polynomial &t, const EFProblem &p);
/* The name, |quoted| when it would not read back as the same symbol. */
std::string print_symbol(const std::string &name);

} // namespace efsmt
