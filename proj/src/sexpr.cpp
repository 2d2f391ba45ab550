/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/sexpr.hpp"

#include <cctype>

namespace efsmt {

std::string_view Sexp::head() const
{
	if (!is_list || items.empty() || items[0].is_list)
		return {};
	return items[0].atom;
}

ParseError::ParseError(SourceLoc l, const std::string &msg)
: Error(ErrorKind::Parse,
        std::to_string(l.line) + ":" + std::to_string(l.column) + ": " + msg),
  loc(l)
{}

namespace {

class Reader {
public:
	explicit Reader(std::string_view t) : text_(t) {}

	std::vector<Sexp> all()
	{
		std::vector<Sexp> out;
		for (skip(); pos_ < text_.size(); skip())
			out.push_back(one());
		return out;
	}

private:
	char peek() const { return text_[pos_]; }

	void advance()
	{
		if (text_[pos_] == '\n') {
			loc_.line++;
			loc_.column = 1;
		} else
			loc_.column++;
		pos_++;
	}

	void skip()
	{
		while (pos_ < text_.size()) {
			if (std::isspace(static_cast<unsigned char>(peek())))
				advance();
			else if (peek() == ';')
				while (pos_ < text_.size() && peek() != '\n')
					advance();
			else
				break;
		}
	}

	Sexp one()
	{
		Sexp s;
		s.loc = loc_;
		if (peek() == ')')
			throw ParseError(loc_, "unexpected ')'");
		if (peek() == '(') {
			advance();
			s.is_list = true;
			for (;;) {
				skip();
				if (pos_ >= text_.size())
					throw ParseError(s.loc, "unterminated list");
				if (peek() == ')') {
					advance();
					return s;
				}
				s.items.push_back(one());
			}
		}
		if (peek() == '|') {
			advance();
			s.quoted = true;
			while (pos_ < text_.size() && peek() != '|') {
				s.atom += peek();
				advance();
			}
			if (pos_ >= text_.size())
				throw ParseError(s.loc, "unterminated quoted symbol");
			advance();
			return s;
		}
		while (pos_ < text_.size()) {
			char c = peek();
			if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';')
				break;
			s.atom += c;
			advance();
		}
		return s;
	}

	std::string_view text_;
	std::size_t pos_ = 0;
	SourceLoc loc_;
};

} // namespace

std::vector<Sexp> read_sexps(std::string_view text)
{
	return Reader(text).all();
}

int paren_balance(std::string_view text)
{
	int depth = 0;
	bool comment = false, quoted = false;
	for (char c : text) {
		if (comment) {
			comment = c != '\n';
			continue;
		}
		if (quoted) {
			quoted = c != '|';
			continue;
		}
		if (c == ';')
			comment = true;
		else if (c == '|')
			quoted = true;
		else if (c == '(')
			depth++;
		else if (c == ')')
			depth--;
	}
	return depth;
}

std::string to_string(const Sexp &s)
{
	if (!s.is_list)
		return s.atom;
	std::string r = "(";
	for (std::size_t i = 0; i < s.items.size(); ++i) {
		if (i)
			r += ' ';
		r += to_string(s.items[i]);
	}
	return r + ")";
}

} // namespace efsmt
