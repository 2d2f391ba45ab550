/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include "efsmt/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace efsmt {

/* Variables are referenced by dense ids; names are metadata kept in VarDecl. */
using VarId = std::uint32_t;

struct Interval {
	Rational lo, hi;

	Interval() = default;
	Interval(Rational lo, Rational hi);

	bool contains(const Rational &v) const { return lo <= v && v <= hi; }
	Rational width() const { return hi - lo; }
	bool is_point() const { return lo == hi; }
	Rational midpoint() const { return (lo + hi) / 2; }

	friend bool operator==(const Interval &, const Interval &) = default;
};

struct BoolSort {
	friend bool operator==(const BoolSort &, const BoolSort &) = default;
};
/* Integer variable over [lo, hi]; endpoints are integers. */
struct IntSort {
	Interval range;
	friend bool operator==(const IntSort &, const IntSort &) = default;
};
struct RealSort {
	Interval range;
	friend bool operator==(const RealSort &, const RealSort &) = default;
};
/* Fixed-point grid {lo, lo+step, ...} ∩ [lo, hi]. The step is the 1_bit. */
struct FixedSort {
	Interval range;
	Rational step;
	friend bool operator==(const FixedSort &, const FixedSort &) = default;
};

using Sort = std::variant<BoolSort, IntSort, RealSort, FixedSort>;

Sort make_int_sort(const Rational &lo, const Rational &hi);
Sort make_real_sort(const Rational &lo, const Rational &hi);
Sort make_fixed_sort(const Rational &lo, const Rational &hi, const Rational &step);

bool is_bool(const Sort &s);
bool is_real(const Sort &s);
bool is_numeric(const Sort &s);
/* Bool, Int and Fixed sorts have finitely many values. */
bool is_finite(const Sort &s);
/* Numeric range; nullptr for Bool. */
const Interval *sort_range(const Sort &s);
/* Number of values of a finite sort (2 for Bool). */
Integer domain_size(const Sort &s);
/* Largest grid value <= hi (hi itself for Real). */
Rational domain_max(const Sort &s);
Rational domain_min(const Sort &s);
std::string sort_name(const Sort &s);

using Value = std::variant<bool, Rational>;

std::string to_string(const Value &v);
bool sort_admits(const Sort &s, const Value &v);

struct VarDecl {
	VarId id = 0;
	std::string name;
	Sort sort;

	friend bool operator==(const VarDecl &, const VarDecl &) = default;
};

struct EvaluationError : std::runtime_error {
	VarId var;
	EvaluationError(VarId var, const std::string &what)
	: std::runtime_error(what), var(var) {}
};

/* Map from variable id to a value. An assignment is partial when some
 * declared variable is unbound. */
class Assignment {
public:
	Assignment() = default;

	void set(VarId v, Value value) { bindings_[v] = std::move(value); }
	void set(VarId v, const Rational &q) { bindings_[v] = q; }
	void set(VarId v, int n) { bindings_[v] = Rational(n); }
	void set_bool(VarId v, bool b) { bindings_[v] = b; }
	void erase(VarId v) { bindings_.erase(v); }

	bool contains(VarId v) const { return bindings_.count(v) != 0; }
	const Value *find(VarId v) const;
	const Rational &number(VarId v) const;
	bool boolean(VarId v) const;

	std::size_t size() const { return bindings_.size(); }
	bool empty() const { return bindings_.empty(); }
	auto begin() const { return bindings_.begin(); }
	auto end() const { return bindings_.end(); }

	bool is_total(std::span<const VarDecl> vars) const;
	/* Bindings of 'vars' only. */
	Assignment restrict_to(std::span<const VarDecl> vars) const;
	/* This assignment overridden by 'other'. */
	Assignment merged(const Assignment &other) const;
	/* Unbound variables of 'vars' bound to their domain minimum. */
	Assignment completed(std::span<const VarDecl> vars) const;

	friend bool operator==(const Assignment &, const Assignment &) = default;

private:
	std::map<VarId, Value> bindings_;
};

} // namespace efsmt
