/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/types.hpp"

namespace efsmt {

Interval::Interval(Rational lo_, Rational hi_)
: lo(std::move(lo_)), hi(std::move(hi_))
{
	if (hi < lo)
		throw std::invalid_argument("interval with lo > hi: [" + to_string(lo) +
		                            ", " + to_string(hi) + "]");
}

Sort make_int_sort(const Rational &lo, const Rational &hi)
{
	if (!is_integer(lo) || !is_integer(hi))
		throw std::invalid_argument("int sort needs integer bounds");
	return IntSort{Interval(lo, hi)};
}

Sort make_real_sort(const Rational &lo, const Rational &hi)
{
	return RealSort{Interval(lo, hi)};
}

Sort make_fixed_sort(const Rational &lo, const Rational &hi, const Rational &step)
{
	if (step <= 0)
		throw std::invalid_argument("fixed-point step must be positive");
	return FixedSort{Interval(lo, hi), step};
}

bool is_bool(const Sort &s) { return std::holds_alternative<BoolSort>(s); }
bool is_real(const Sort &s) { return std::holds_alternative<RealSort>(s); }
bool is_numeric(const Sort &s) { return !is_bool(s); }
bool is_finite(const Sort &s) { return !is_real(s); }

const Interval *sort_range(const Sort &s)
{
	if (auto *i = std::get_if<IntSort>(&s))
		return &i->range;
	if (auto *r = std::get_if<RealSort>(&s))
		return &r->range;
	if (auto *f = std::get_if<FixedSort>(&s))
		return &f->range;
	return nullptr;
}

Integer domain_size(const Sort &s)
{
	if (is_bool(s))
		return 2;
	if (auto *i = std::get_if<IntSort>(&s))
		return Integer(i->range.hi.get_num() - i->range.lo.get_num() + 1);
	if (auto *f = std::get_if<FixedSort>(&s)) {
		Rational n = floor_div(f->range.width(), f->step);
		return n.get_num() + 1;
	}
	throw std::logic_error("domain_size of a real sort");
}

Rational domain_min(const Sort &s)
{
	if (auto *r = sort_range(s))
		return r->lo;
	return 0;
}

Rational domain_max(const Sort &s)
{
	if (auto *f = std::get_if<FixedSort>(&s))
		return f->range.lo + floor_div(f->range.width(), f->step) * f->step;
	if (auto *r = sort_range(s))
		return r->hi;
	return 1;
}

std::string sort_name(const Sort &s)
{
	if (is_bool(s))
		return "bool";
	if (auto *i = std::get_if<IntSort>(&s))
		return "int " + to_string(i->range.lo) + " " + to_string(i->range.hi);
	if (auto *r = std::get_if<RealSort>(&s))
		return "real " + to_string(r->range.lo) + " " + to_string(r->range.hi);
	auto &f = std::get<FixedSort>(s);
	return "fixed " + to_string(f.range.lo) + " " + to_string(f.range.hi) + " " +
	       to_string(f.step);
}

std::string to_string(const Value &v)
{
	if (auto *b = std::get_if<bool>(&v))
		return *b ? "true" : "false";
	return to_string(std::get<Rational>(v));
}

bool sort_admits(const Sort &s, const Value &v)
{
	if (is_bool(s))
		return std::holds_alternative<bool>(v);
	auto *q = std::get_if<Rational>(&v);
	if (!q || !sort_range(s)->contains(*q))
		return false;
	if (std::holds_alternative<IntSort>(s))
		return is_integer(*q);
	if (auto *f = std::get_if<FixedSort>(&s))
		return is_integer((*q - f->range.lo) / f->step);
	return true;
}

const Value *Assignment::find(VarId v) const
{
	auto it = bindings_.find(v);
	return it == bindings_.end() ? nullptr : &it->second;
}

const Rational &Assignment::number(VarId v) const
{
	auto *val = find(v);
	if (!val)
		throw EvaluationError(v, "unbound variable #" + std::to_string(v));
	auto *q = std::get_if<Rational>(val);
	if (!q)
		throw EvaluationError(v, "variable #" + std::to_string(v) + " is boolean, number expected");
	return *q;
}

bool Assignment::boolean(VarId v) const
{
	auto *val = find(v);
	if (!val)
		throw EvaluationError(v, "unbound variable #" + std::to_string(v));
	auto *b = std::get_if<bool>(val);
	if (!b)
		throw EvaluationError(v, "variable #" + std::to_string(v) + " is numeric, boolean expected");
	return *b;
}

bool Assignment::is_total(std::span<const VarDecl> vars) const
{
	for (const VarDecl &d : vars)
		if (!contains(d.id))
			return false;
	return true;
}

Assignment Assignment::restrict_to(std::span<const VarDecl> vars) const
{
	Assignment r;
	for (const VarDecl &d : vars)
		if (auto *v = find(d.id))
			r.set(d.id, *v);
	return r;
}

Assignment Assignment::merged(const Assignment &other) const
{
	Assignment r = *this;
	for (const auto &[id, v] : other)
		r.set(id, v);
	return r;
}

Assignment Assignment::completed(std::span<const VarDecl> vars) const
{
	Assignment r = *this;
	for (const VarDecl &d : vars)
		if (!r.contains(d.id)) {
			if (is_bool(d.sort))
				r.set_bool(d.id, false);
			else
				r.set(d.id, domain_min(d.sort));
		}
	return r;
}

} // namespace efsmt
