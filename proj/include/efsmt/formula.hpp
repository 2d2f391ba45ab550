/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include "efsmt/polynomial.hpp"

#include <memory>
#include <set>
#include <span>
#include <variant>
#include <vector>

namespace efsmt {

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };

CmpOp negate(CmpOp op);
/* The operator obtained when both sides are multiplied by -1. */
CmpOp mirror(CmpOp op);
bool compare(const Rational &lhs, CmpOp op, const Rational &rhs);
const char *op_symbol(CmpOp op);

/* lhs op rhs, with lhs a polynomial and rhs a constant. */
struct PolyCmp {
	Polynomial lhs;
	CmpOp op;
	Rational rhs;

	bool holds(const Assignment &a) const;
	/* lhs - rhs */
	Polynomial difference() const { return lhs - Polynomial(rhs); }

	friend bool operator==(const PolyCmp &, const PolyCmp &) = default;
};

/* Comparison between two polynomial terms, normalized so that the constant
 * lives on the right-hand side. */
PolyCmp make_cmp(const Polynomial &lhs, CmpOp op, const Polynomial &rhs);

struct BoolAtom {
	VarId var;
	friend bool operator==(const BoolAtom &, const BoolAtom &) = default;
};

using Atom = std::variant<PolyCmp, BoolAtom>;

/* Immutable quantifier-free formula tree. Copies share structure. */
class Formula {
public:
	enum class Kind { True, False, Atom, Not, And, Or, Implies, Iff };

	Formula();	/* true */

	static Formula top();
	static Formula bottom();
	static Formula constant(bool b) { return b ? top() : bottom(); }
	static Formula atom(Atom a);
	static Formula cmp(const Polynomial &lhs, CmpOp op, const Rational &rhs);
	static Formula cmp(PolyCmp c) { return atom(std::move(c)); }
	static Formula boolean(VarId v);
	static Formula negation(Formula f);
	static Formula conj(std::vector<Formula> fs);
	static Formula disj(std::vector<Formula> fs);
	static Formula implies(Formula a, Formula b);
	static Formula iff(Formula a, Formula b);

	Kind kind() const;
	const Atom &atom() const;
	std::span<const Formula> children() const;
	bool is_true() const { return kind() == Kind::True; }
	bool is_false() const { return kind() == Kind::False; }

	friend bool operator==(const Formula &a, const Formula &b);

private:
	struct Node;
	explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
	std::shared_ptr<const Node> node_;
};

Formula operator&&(Formula a, Formula b);
Formula operator||(Formula a, Formula b);
Formula operator!(Formula a);

/* Standard semantics; throws EvaluationError on an unbound variable. */
bool evaluate(const Formula &f, const Assignment &a);

/* Bound variables replaced by constants. Atoms that become variable-free are
 * folded to true/false; nothing else is simplified. */
Formula substitute(const Formula &f, const Assignment &a);

/* Constant propagation through the connectives. */
Formula simplify(const Formula &f);

/* Negation normal form of f / of ¬f: only And/Or over atoms, with comparison
 * operators flipped instead of negated. Boolean atoms may appear under Not. */
Formula to_nnf(const Formula &f);
Formula negate_to_nnf(const Formula &f);

std::set<VarId> free_vars(const Formula &f);
void collect_atoms(const Formula &f, std::vector<Atom> &out);
/* Top-level conjuncts (flattening nested And). */
std::vector<Formula> conjuncts(const Formula &f);
unsigned max_degree(const Formula &f);

} // namespace efsmt
