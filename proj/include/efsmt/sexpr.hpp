/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include "efsmt/error.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace efsmt {

struct SourceLoc {
	int line = 1;
	int column = 1;
};

struct Sexp {
	bool is_list = false;
	bool quoted = false;	/* atom written as |...| */
	std::string atom;
	std::vector<Sexp> items;
	SourceLoc loc;

	bool is_atom() const { return !is_list; }
	bool is_symbol(std::string_view s) const { return !is_list && atom == s; }
	/* Head symbol of a non-empty list whose first item is an atom, else "". */
	std::string_view head() const;
};

struct ParseError : Error {
	SourceLoc loc;
	ParseError(SourceLoc loc, const std::string &msg);
};

/* Reads all top-level expressions. ';' starts a comment running to the end
 * of the line; |quoted symbols| keep their bars stripped. */
std::vector<Sexp> read_sexps(std::string_view text);

/* Number of '(' minus ')' outside comments and quoted symbols; used to find
 * the end of a reply on a stream. */
int paren_balance(std::string_view text);

std::string to_string(const Sexp &s);

} // namespace efsmt
