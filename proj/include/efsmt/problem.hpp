/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include "efsmt/error.hpp"
#include "efsmt/formula.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace efsmt {

/* ∃x̄ ∀ȳ φ(x̄, ȳ) over boxed domains. Variable ids are dense and shared by
 * both lists; the id is the declaration index. */
struct EFProblem {
	std::vector<VarDecl> exists_vars;
	std::vector<VarDecl> forall_vars;
	Formula matrix;

	VarId declare_exists(std::string name, Sort sort);
	VarId declare_forall(std::string name, Sort sort);

	std::size_t var_count() const { return exists_vars.size() + forall_vars.size(); }
	const VarDecl *find(VarId id) const;
	const VarDecl *find(std::string_view name) const;
	const VarDecl &decl(VarId id) const;
	const std::string &name(VarId id) const { return decl(id).name; }
	bool is_exists(VarId id) const;
	bool is_forall(VarId id) const;
	/* Both lists, ordered by id. */
	std::vector<VarDecl> all_vars() const;

	/* Throws Error(Encoding) naming the offending variable. */
	void validate() const;
};

/* (⋀ assumptions) → guarantee */
struct AGRule {
	std::vector<PolyCmp> assumptions;
	PolyCmp guarantee;

	Formula to_formula() const;
};

/* ⋀_j ((⋀_p ρ_jp op d_jp) → φ_j op e_j) */
struct AGProblem {
	std::vector<VarDecl> exists_vars;
	std::vector<VarDecl> forall_vars;
	std::vector<AGRule> rules;

	Formula to_formula() const;
	EFProblem to_ef() const;
};

/* Assume-guarantee view of p when every top-level conjunct is an inequality
 * atom or an implication from a conjunction of inequality atoms to one. */
std::optional<AGProblem> to_ag(const EFProblem &p);
std::optional<std::vector<AGRule>> ag_rules(const Formula &matrix);

/* Every monomial of every atom has at most one existential and at most one
 * universal variable, each with exponent one. */
bool linearizable(const EFProblem &p);


} // namespace efsmt
