/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/session.hpp"

namespace efsmt {

SolverSession::SolverSession(std::vector<VarDecl> vars)
: vars_(std::move(vars)), frames_(1)
{}

SolverSession::~SolverSession() = default;

void SolverSession::push()
{
	frames_.emplace_back();
	on_push();
}

void SolverSession::pop()
{
	if (frames_.size() <= 1)
		throw Error(ErrorKind::Usage, "pop without a matching push");
	frames_.pop_back();
	on_pop();
}

void SolverSession::assert_formula(const Formula &f)
{
	frames_.back().push_back(f);
	on_assert(f);
}

std::vector<Formula> SolverSession::assertions() const
{
	std::vector<Formula> r;
	for (const auto &fr : frames_)
		r.insert(r.end(), fr.begin(), fr.end());
	return r;
}

CheckResult SolverSession::check()
{
	stats_.checks++;
	CheckResult r = do_check(assertions());
	if (r.is_unsat())
		stats_.conflicts++;
	return r;
}

Formula binding_formula(VarId v, const Value &value)
{
	if (auto *b = std::get_if<bool>(&value))
		return *b ? Formula::boolean(v) : Formula::negation(Formula::boolean(v));
	return Formula::cmp(Polynomial::var(v), CmpOp::Eq, std::get<Rational>(value));
}

Formula bindings_formula(const Assignment &a)
{
	std::vector<Formula> fs;
	for (const auto &[v, val] : a)
		fs.push_back(binding_formula(v, val));
	return Formula::conj(std::move(fs));
}

std::unique_ptr<SolverSession> make_session(const BackendOptions &opt, std::vector<VarDecl> vars)
{
	switch (opt.kind) {
	case BackendKind::Linear: return make_linear_session(std::move(vars));
	case BackendKind::Enum: return make_enum_session(std::move(vars));
	case BackendKind::External:
		return make_external_session(std::move(vars), opt.command, opt.timeout);
	}
	throw Error(ErrorKind::Internal, "unknown backend kind");
}

Assignment generalize_model(const SolverSession &s, const Assignment &model, const Formula &goal)
{
	Assignment current = model;
	std::unique_ptr<SolverSession> aux = s.fresh();
	Formula negated = negate_to_nnf(goal);
	for (const VarDecl &d : s.vars()) {
		if (!current.contains(d.id))
			continue;
		Assignment trial = current;
		trial.erase(d.id);
		aux->push();
		aux->assert_formula(bindings_formula(trial));
		aux->assert_formula(negated);
		CheckResult r = aux->check();
		aux->pop();
		if (r.is_unsat())
			current = std::move(trial);
	}
	return current;
}

namespace detail {

namespace {

/* v = c from a·v = b, or a boolean literal. */
std::optional<std::pair<VarId, Value>> unit_binding(const Formula &f)
{
	if (f.kind() == Formula::Kind::Not) {
		const Formula &g = f.children()[0];
		if (g.kind() == Formula::Kind::Atom)
			if (auto *b = std::get_if<BoolAtom>(&g.atom()))
				return std::pair<VarId, Value>{b->var, false};
		return std::nullopt;
	}
	if (f.kind() != Formula::Kind::Atom)
		return std::nullopt;
	if (auto *b = std::get_if<BoolAtom>(&f.atom()))
		return std::pair<VarId, Value>{b->var, true};
	const PolyCmp &c = std::get<PolyCmp>(f.atom());
	if (c.op != CmpOp::Eq || c.lhs.terms().size() != 1)
		return std::nullopt;
	const auto &[powers, coeff] = *c.lhs.terms().begin();
	if (powers.size() != 1 || powers[0].second != 1)
		return std::nullopt;
	return std::pair<VarId, Value>{powers[0].first, Rational(c.rhs / coeff)};
}

const VarDecl *lookup(const std::vector<VarDecl> &vars, VarId v)
{
	for (const VarDecl &d : vars)
		if (d.id == v)
			return &d;
	return nullptr;
}

} // namespace

Preprocessed propagate_units(const std::vector<Formula> &live, const std::vector<VarDecl> &vars)
{
	Preprocessed out;
	std::vector<Formula> work;
	for (const Formula &f : live)
		for (const Formula &c : conjuncts(simplify(f)))
			work.push_back(c);
	for (;;) {
		Assignment fresh;
		std::vector<Formula> rest;
		for (const Formula &f : work) {
			if (f.is_false()) {
				out.conflict = true;
				return out;
			}
			auto u = unit_binding(f);
			if (u && !fresh.contains(u->first)) {
				const VarDecl *d = lookup(vars, u->first);
				if (d && !sort_admits(d->sort, u->second)) {
					out.conflict = true;
					return out;
				}
				fresh.set(u->first, u->second);
			} else
				rest.push_back(f);
		}
		for (const auto &[v, val] : fresh)
			out.bindings.set(v, val);
		if (fresh.empty()) {
			out.rest = std::move(rest);
			return out;
		}
		work.clear();
		for (const Formula &f : rest)
			for (const Formula &c : conjuncts(simplify(substitute(f, fresh))))
				work.push_back(c);
	}
}

} // namespace detail

} // namespace efsmt
