/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/problem.hpp"

#include <set>

namespace efsmt {

const char *error_kind_name(ErrorKind k)
{
	switch (k) {
	case ErrorKind::Usage: return "usage error";
	case ErrorKind::Parse: return "parse error";
	case ErrorKind::Config: return "configuration error";
	case ErrorKind::Unsupported: return "unsupported";
	case ErrorKind::Encoding: return "encoding error";
	case ErrorKind::Degenerate: return "degenerate input";
	case ErrorKind::Internal: return "internal error";
	}
	return "error";
}

VarId EFProblem::declare_exists(std::string name, Sort sort)
{
	VarId id = var_count();
	exists_vars.push_back({id, std::move(name), std::move(sort)});
	return id;
}

VarId EFProblem::declare_forall(std::string name, Sort sort)
{
	VarId id = var_count();
	forall_vars.push_back({id, std::move(name), std::move(sort)});
	return id;
}

const VarDecl *EFProblem::find(VarId id) const
{
	for (const auto *list : {&exists_vars, &forall_vars})
		for (const VarDecl &d : *list)
			if (d.id == id)
				return &d;
	return nullptr;
}

const VarDecl *EFProblem::find(std::string_view name) const
{
	for (const auto *list : {&exists_vars, &forall_vars})
		for (const VarDecl &d : *list)
			if (d.name == name)
				return &d;
	return nullptr;
}

const VarDecl &EFProblem::decl(VarId id) const
{
	if (const VarDecl *d = find(id))
		return *d;
	throw Error(ErrorKind::Internal, "undeclared variable #" + std::to_string(id));
}

bool EFProblem::is_exists(VarId id) const
{
	for (const VarDecl &d : exists_vars)
		if (d.id == id)
			return true;
	return false;
}

bool EFProblem::is_forall(VarId id) const
{
	for (const VarDecl &d : forall_vars)
		if (d.id == id)
			return true;
	return false;
}

std::vector<VarDecl> EFProblem::all_vars() const
{
	std::vector<VarDecl> r = exists_vars;
	r.insert(r.end(), forall_vars.begin(), forall_vars.end());
	std::sort(r.begin(), r.end(), [](auto &a, auto &b) { return a.id < b.id; });
	return r;
}

void EFProblem::validate() const
{
	std::set<VarId> ids;
	std::set<std::string> names;
	for (const VarDecl &d : all_vars()) {
		if (!ids.insert(d.id).second)
			throw Error(ErrorKind::Encoding, "variable id declared twice: " + d.name);
		if (!names.insert(d.name).second)
			throw Error(ErrorKind::Encoding, "variable declared twice: " + d.name);
	}
	std::vector<Atom> atoms;
	collect_atoms(matrix, atoms);
	for (const Atom &a : atoms) {
		if (auto *c = std::get_if<PolyCmp>(&a)) {
			for (VarId v : c->lhs.vars()) {
				const VarDecl *d = find(v);
				if (!d)
					throw Error(ErrorKind::Encoding,
					            "undeclared variable #" + std::to_string(v));
				if (!is_numeric(d->sort))
					throw Error(ErrorKind::Encoding,
					            "boolean variable used in arithmetic: " + d->name);
			}
		} else {
			VarId v = std::get<BoolAtom>(a).var;
			const VarDecl *d = find(v);
			if (!d)
				throw Error(ErrorKind::Encoding, "undeclared variable #" + std::to_string(v));
			if (!is_bool(d->sort))
				throw Error(ErrorKind::Encoding,
				            "numeric variable used as a proposition: " + d->name);
		}
	}
}

Formula AGRule::to_formula() const
{
	std::vector<Formula> as;
	for (const PolyCmp &c : assumptions)
		as.push_back(Formula::cmp(c));
	if (as.empty())
		return Formula::cmp(guarantee);
	return Formula::implies(Formula::conj(std::move(as)), Formula::cmp(guarantee));
}

Formula AGProblem::to_formula() const
{
	std::vector<Formula> fs;
	for (const AGRule &r : rules)
		fs.push_back(r.to_formula());
	return Formula::conj(std::move(fs));
}

EFProblem AGProblem::to_ef() const
{
	return EFProblem{exists_vars, forall_vars, to_formula()};
}

namespace {

bool inequality(const PolyCmp &c)
{
	return c.op != CmpOp::Eq && c.op != CmpOp::Ne;
}

std::optional<PolyCmp> inequality_atom(const Formula &f)
{
	if (f.kind() != Formula::Kind::Atom)
		return std::nullopt;
	auto *c = std::get_if<PolyCmp>(&f.atom());
	if (!c || !inequality(*c))
		return std::nullopt;
	return *c;
}

} // namespace

std::optional<std::vector<AGRule>> ag_rules(const Formula &matrix)
{
	std::vector<AGRule> rules;
	for (const Formula &f : conjuncts(matrix)) {
		if (auto g = inequality_atom(f)) {
			rules.push_back({{}, *g});
			continue;
		}
		if (f.kind() != Formula::Kind::Implies)
			return std::nullopt;
		auto g = inequality_atom(f.children()[1]);
		if (!g)
			return std::nullopt;
		AGRule r{{}, *g};
		for (const Formula &a : conjuncts(f.children()[0])) {
			auto c = inequality_atom(a);
			if (!c)
				return std::nullopt;
			r.assumptions.push_back(*c);
		}
		rules.push_back(std::move(r));
	}
	return rules;
}

std::optional<AGProblem> to_ag(const EFProblem &p)
{
	auto rules = ag_rules(p.matrix);
	if (!rules)
		return std::nullopt;
	return AGProblem{p.exists_vars, p.forall_vars, std::move(*rules)};
}

bool linearizable(const EFProblem &p)
{
	std::vector<Atom> atoms;
	collect_atoms(p.matrix, atoms);
	for (const Atom &a : atoms) {
		auto *c = std::get_if<PolyCmp>(&a);
		if (!c)
			continue;
		for (const Monomial &m : c->lhs.monomials()) {
			int ex = 0, fa = 0;
			for (auto [v, e] : m.powers) {
				if (e != 1)
					return false;
				(p.is_exists(v) ? ex : fa)++;
			}
			if (ex > 1 || fa > 1)
				return false;
		}
	}
	return true;
}

} // namespace efsmt
