/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include "efsmt/bernstein.hpp"

#include <string>
#include <utility>
#include <vector>

namespace efsmt {

enum class Quantified { Exists, Forall, Both };

/* Real sorts of the selected side become Fixed(same range, step). */
EFProblem discretize(const EFProblem &p, const Rational &step, Quantified which);

/* Where the atom sits in an assume-guarantee rule. Guarantees are shifted in
 * the adversarial direction, assumptions in the favourable one, so that the
 * strengthened rule implies the original. */
enum class Polarity { Guarantee, Assumption };

struct StrengthenReport {
	PolyCmp original;
	PolyCmp strengthened;
	std::map<VarId, Rational> shift;	/* -step, 0 or +step per universal variable */
	std::vector<std::string> justification;
};

struct StrengthenFailure : Error {
	VarId var;
	StrengthenFailure(VarId v, const std::string &msg) : Error(ErrorKind::Encoding, msg), var(v) {}
};

/* Shift each universal variable of 'atom' by ±step after certifying the sign
 * of the partial derivative over 'box' (which must cover every variable of
 * the atom). 'universal' lists the variables to shift. The result is checked
 * on 1000 sampled points before it is returned. */
StrengthenReport strengthen(const PolyCmp &atom, const std::vector<VarId> &universal,
                            const Box &box, const Rational &step,
                            Polarity polarity = Polarity::Guarantee,
                            unsigned max_depth = 10);

/* First-column conditions of the Routh array of Σ coeffs[i]·s^(n-i). The
 * array is built fraction-free; every row is divided by earlier pivots
 * whenever they divide it exactly, which only rescales rows by quantities
 * that are positive under the earlier conditions. A negative numeric leading
 * coefficient flips all signs first. Throws Error(Degenerate) on an
 * identically zero pivot. */
std::vector<Polynomial> routh_first_column(std::vector<Polynomial> coeffs);

/* den(α + βi) = re + im·i, with s the distinguished variable. */
std::pair<Polynomial, Polynomial> complex_split(const Polynomial &den, VarId s, VarId alpha,
                                                VarId beta);

} // namespace efsmt
