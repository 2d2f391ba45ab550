/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include "efsmt/formula.hpp"
#include "efsmt/sexpr.hpp"

#include <functional>
#include <optional>
#include <string>

namespace efsmt {

/* SMT-LIB 2 rendering used by the external backend. Negative numbers print as
 * (- k) and fractions as (/ p q). */
std::string smtlib_number(const Rational &q);
std::string smtlib_term(const Polynomial &p, const std::function<std::string(VarId)> &name);
std::string smtlib_formula(const Formula &f, const std::function<std::string(VarId)> &name);

/* Inverse of smtlib_number; also accepts decimals and true/false. */
std::optional<Value> parse_smtlib_value(const Sexp &s);

} // namespace efsmt
