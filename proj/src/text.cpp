/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/text.hpp"

#include <cctype>
#include <set>

namespace efsmt {

const std::string *PresetCall::arg(std::string_view key) const
{
	for (const auto &[k, v] : args)
		if (k == key)
			return &v;
	return nullptr;
}

Formula ProblemFile::matrix() const
{
	std::vector<Formula> cs;
	if (!guarantee.empty()) {
		Formula g = Formula::conj(guarantee);
		cs.push_back(assume.empty() ? g : Formula::implies(Formula::conj(assume), g));
	}
	cs.insert(cs.end(), constrain.begin(), constrain.end());
	return Formula::conj(std::move(cs));
}

EFProblem ProblemFile::problem() const
{
	EFProblem p = declarations;
	p.matrix = matrix();
	p.validate();
	return p;
}

bool operator==(const ProblemFile &a, const ProblemFile &b)
{
	return a.declarations.exists_vars == b.declarations.exists_vars &&
	       a.declarations.forall_vars == b.declarations.forall_vars &&
	       a.assume == b.assume && a.guarantee == b.guarantee &&
	       a.constrain == b.constrain && a.strategy == b.strategy && a.preset == b.preset;
}

namespace {

const std::set<std::string, std::less<>> reserved = {
	"true", "false", "not", "and", "or", "=>", "iff", "<=>", "=", "<", "<=", ">", ">=",
	"distinct", "!=", "+", "-", "*", "^", "/",
};

const std::set<std::string, std::less<>> formula_heads = {
	"not", "and", "or", "=>", "iff", "<=>", "=", "<", "<=", ">", ">=", "distinct", "!=",
};

bool is_number(const std::string &s)
{
	if (s.empty())
		return false;
	try {
		parse_rational(s);
		return true;
	} catch (const RationalSyntaxError &) {
		return false;
	}
}

class Parser {
public:
	ProblemFile file;

	void command(const Sexp &s)
	{
		std::string_view h = s.head();
		if (h.empty())
			throw ParseError(s.loc, "expected a command");
		if (file.preset && h != "set-strategy")
			throw ParseError(s.loc, "a preset file holds no other commands");
		if (h == "declare-exists" || h == "declare-forall")
			declare(s, h == "declare-exists");
		else if (h == "assume")
			file.assume.push_back(formula(single(s)));
		else if (h == "guarantee")
			file.guarantee.push_back(formula(single(s)));
		else if (h == "constrain")
			file.constrain.push_back(formula(single(s)));
		else if (h == "set-strategy") {
			const Sexp &a = single(s);
			auto st = a.is_atom() ? parse_strategy(a.atom) : std::nullopt;
			if (!st)
				throw ParseError(a.loc, "unknown strategy '" + to_string(a) + "'");
			file.strategy = st;
		} else if (h == "preset")
			preset(s);
		else
			throw ParseError(s.loc, "unknown command '" + std::string(h) + "'");
	}

private:
	const Sexp &single(const Sexp &s)
	{
		if (s.items.size() != 2)
			throw ParseError(s.loc, "'" + std::string(s.head()) + "' takes one argument");
		return s.items[1];
	}

	Rational number(const Sexp &s)
	{
		if (s.is_list || s.quoted)
			throw ParseError(s.loc, "expected a number");
		try {
			return parse_rational(s.atom);
		} catch (const RationalSyntaxError &e) {
			throw ParseError(s.loc, e.what());
		}
	}

	void declare(const Sexp &s, bool exists)
	{
		if (!file.assume.empty() || !file.guarantee.empty() || !file.constrain.empty())
			throw ParseError(s.loc, "declarations must precede constraints");
		if (s.items.size() < 3 || s.items[1].is_list || s.items[2].is_list)
			throw ParseError(s.loc, "expected (" + std::string(s.head()) + " name sort ...)");
		const std::string &name = s.items[1].atom;
		if (name.empty() || (!s.items[1].quoted && (is_number(name) || reserved.count(name))))
			throw ParseError(s.items[1].loc, "invalid variable name '" + name + "'");
		if (file.declarations.find(name))
			throw ParseError(s.items[1].loc, "duplicate declaration of '" + name + "'");
		const std::string &sort = s.items[2].atom;
		const std::size_t n = s.items.size();
		auto arity = [&](std::size_t want) {
			if (n == 3 && sort != "bool")
				throw ParseError(s.loc, "unbounded numeric variable '" + name + "'");
			if (n != want)
				throw ParseError(s.loc, "sort " + sort + " takes " + std::to_string(want - 3) +
				                 " arguments, got " + std::to_string(n - 3));
		};
		Sort so;
		try {
			if (sort == "bool") {
				arity(3);
				so = BoolSort{};
			} else if (sort == "int") {
				arity(5);
				so = make_int_sort(number(s.items[3]), number(s.items[4]));
			} else if (sort == "real") {
				arity(5);
				so = make_real_sort(number(s.items[3]), number(s.items[4]));
			} else if (sort == "fixed") {
				arity(6);
				so = make_fixed_sort(number(s.items[3]), number(s.items[4]), number(s.items[5]));
			} else
				throw ParseError(s.items[2].loc, "unknown sort '" + sort + "'");
		} catch (const ParseError &) {
			throw;
		} catch (const std::exception &e) {
			throw ParseError(s.items[2].loc, e.what());
		}
		if (exists)
			file.declarations.declare_exists(name, so);
		else
			file.declarations.declare_forall(name, so);
	}

	void preset(const Sexp &s)
	{
		if (file.declarations.var_count() || !file.assume.empty() || !file.guarantee.empty() ||
		    !file.constrain.empty())
			throw ParseError(s.loc, "a preset file holds no other commands");
		if (s.items.size() < 2 || s.items[1].is_list)
			throw ParseError(s.loc, "expected (preset name key=value ...)");
		PresetCall call{s.items[1].atom, {}, s.loc};
		for (std::size_t i = 2; i < s.items.size(); ++i) {
			const Sexp &a = s.items[i];
			auto eq = a.is_atom() ? a.atom.find('=') : std::string::npos;
			if (eq == std::string::npos || eq == 0)
				throw ParseError(a.loc, "expected key=value, got '" + to_string(a) + "'");
			std::string key = a.atom.substr(0, eq);
			if (call.arg(key))
				throw ParseError(a.loc, "duplicate preset argument '" + key + "'");
			call.args.emplace_back(std::move(key), a.atom.substr(eq + 1));
		}
		file.preset = std::move(call);
	}

	const VarDecl &variable(const Sexp &s)
	{
		const VarDecl *d = file.declarations.find(s.atom);
		if (!d)
			throw ParseError(s.loc, "undeclared variable '" + s.atom + "'");
		return *d;
	}

	bool is_formula(const Sexp &s)
	{
		if (s.is_list)
			return formula_heads.count(s.head()) && !(s.head() == "=" && !eq_is_iff(s));
		if (s.quoted)
			return is_bool(variable(s).sort);
		if (s.atom == "true" || s.atom == "false")
			return true;
		if (is_number(s.atom))
			return false;
		return is_bool(variable(s).sort);
	}

	bool eq_is_iff(const Sexp &s)
	{
		return s.items.size() > 1 && is_formula(s.items[1]);
	}

	void arity_at_least(const Sexp &s, std::size_t k)
	{
		if (s.items.size() < k + 1)
			throw ParseError(s.loc, "'" + std::string(s.head()) + "' needs at least " +
			                 std::to_string(k) + " argument" + (k == 1 ? "" : "s"));
	}

	void arity_exactly(const Sexp &s, std::size_t k)
	{
		if (s.items.size() != k + 1)
			throw ParseError(s.loc, "'" + std::string(s.head()) + "' takes " +
			                 std::to_string(k) + " argument" + (k == 1 ? "" : "s"));
	}

	Formula formula(const Sexp &s)
	{
		if (s.is_atom()) {
			if (!s.quoted && s.atom == "true")
				return Formula::top();
			if (!s.quoted && s.atom == "false")
				return Formula::bottom();
			if (!s.quoted && is_number(s.atom))
				throw ParseError(s.loc, "expected a formula, got a number");
			const VarDecl &d = variable(s);
			if (!is_bool(d.sort))
				throw ParseError(s.loc, "'" + s.atom + "' is not boolean");
			return Formula::boolean(d.id);
		}
		std::string_view h = s.head();
		if (h.empty())
			throw ParseError(s.loc, "expected a formula");
		std::vector<Formula> kids;
		auto subformulas = [&] {
			for (std::size_t i = 1; i < s.items.size(); ++i)
				kids.push_back(formula(s.items[i]));
		};
		if (h == "not") {
			arity_exactly(s, 1);
			return Formula::negation(formula(s.items[1]));
		}
		if (h == "and" || h == "or") {
			subformulas();
			return h == "and" ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
		}
		if (h == "=>") {
			arity_at_least(s, 2);
			subformulas();
			Formula f = kids.back();
			for (std::size_t i = kids.size() - 1; i-- > 0;)
				f = Formula::implies(kids[i], f);
			return f;
		}
		if (h == "iff" || h == "<=>" || (h == "=" && eq_is_iff(s))) {
			arity_exactly(s, 2);
			return Formula::iff(formula(s.items[1]), formula(s.items[2]));
		}
		static const std::pair<std::string_view, CmpOp> ops[] = {
			{"<", CmpOp::Lt}, {"<=", CmpOp::Le}, {">", CmpOp::Gt},
			{">=", CmpOp::Ge}, {"=", CmpOp::Eq},
		};
		for (const auto &[sym, op] : ops)
			if (h == sym) {
				arity_at_least(s, 2);
				std::vector<Polynomial> ts;
				for (std::size_t i = 1; i < s.items.size(); ++i)
					ts.push_back(term(s.items[i]));
				for (std::size_t i = 0; i + 1 < ts.size(); ++i)
					kids.push_back(Formula::cmp(make_cmp(ts[i], op, ts[i + 1])));
				return Formula::conj(std::move(kids));
			}
		if (h == "distinct" || h == "!=") {
			arity_at_least(s, 2);
			if (is_formula(s.items[1])) {
				arity_exactly(s, 2);
				return Formula::negation(Formula::iff(formula(s.items[1]), formula(s.items[2])));
			}
			std::vector<Polynomial> ts;
			for (std::size_t i = 1; i < s.items.size(); ++i)
				ts.push_back(term(s.items[i]));
			for (std::size_t i = 0; i < ts.size(); ++i)
				for (std::size_t j = i + 1; j < ts.size(); ++j)
					kids.push_back(Formula::cmp(make_cmp(ts[i], CmpOp::Ne, ts[j])));
			return Formula::conj(std::move(kids));
		}
		throw ParseError(s.loc, "unknown connective '" + std::string(h) + "'");
	}

	Polynomial term(const Sexp &s)
	{
		if (s.is_atom()) {
			if (!s.quoted && is_number(s.atom))
				return Polynomial(number(s));
			if (!s.quoted && (s.atom == "true" || s.atom == "false"))
				throw ParseError(s.loc, "expected a term, got '" + s.atom + "'");
			const VarDecl &d = variable(s);
			if (is_bool(d.sort))
				throw ParseError(s.loc, "boolean variable '" + s.atom + "' in arithmetic");
			return Polynomial::var(d.id);
		}
		std::string_view h = s.head();
		if (h.empty())
			throw ParseError(s.loc, "expected a term");
		if (h == "+" || h == "*") {
			arity_at_least(s, 1);
			Polynomial r = term(s.items[1]);
			for (std::size_t i = 2; i < s.items.size(); ++i)
				r = h == "+" ? r + term(s.items[i]) : r * term(s.items[i]);
			return r;
		}
		if (h == "-") {
			arity_at_least(s, 1);
			Polynomial r = term(s.items[1]);
			if (s.items.size() == 2)
				return -r;
			for (std::size_t i = 2; i < s.items.size(); ++i)
				r -= term(s.items[i]);
			return r;
		}
		if (h == "^") {
			arity_exactly(s, 2);
			Rational k = number(s.items[2]);
			if (!is_integer(k) || k < 0 || k > 64)
				throw ParseError(s.items[2].loc, "exponent must be an integer in [0, 64]");
			return term(s.items[1]).pow(static_cast<unsigned>(k.get_num().get_ui()));
		}
		if (h == "/") {
			arity_exactly(s, 2);
			Polynomial d = term(s.items[2]);
			if (!d.is_constant())
				throw ParseError(s.items[2].loc, "division by a non-constant term");
			if (d.constant() == 0)
				throw ParseError(s.items[2].loc, "division by zero");
			return term(s.items[1]) * Rational(1 / d.constant());
		}
		if (formula_heads.count(h))
			throw ParseError(s.loc, "expected a term, got a formula");
		throw ParseError(s.loc, "unknown function '" + std::string(h) + "'");
	}
};

} // namespace

ProblemFile parse_problem(std::string_view text)
{
	Parser parser;
	std::vector<Sexp> doc = read_sexps(text);
	for (const Sexp &s : doc)
		parser.command(s);
	ProblemFile &f = parser.file;
	if (!f.preset && f.declarations.var_count() == 0) {
		SourceLoc end;
		if (!doc.empty())
			end = doc.back().loc;
		throw ParseError(end, "no declarations");
	}
	if (!f.preset) {
		try {
			f.problem();
		} catch (const Error &e) {
			throw ParseError(doc.back().loc, e.what());
		}
	}
	return std::move(parser.file);
}

std::string print_symbol(const std::string &name)
{
	bool plain = !name.empty() && !is_number(name) && !reserved.count(name);
	for (char c : name)
		if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';' ||
		    c == '|')
			plain = false;
	return plain ? name : "|" + name + "|";
}

std::string print_term(const Polynomial &t, const EFProblem &p)
{
	std::vector<std::string> sum;
	for (const auto &[powers, coeff] : t.terms()) {
		std::vector<std::string> prod;
		if (coeff != 1 || powers.empty())
			prod.push_back(to_string(coeff));
		for (const auto &[v, e] : powers) {
			std::string x = print_symbol(p.name(v));
			prod.push_back(e == 1 ? x : "(^ " + x + " " + std::to_string(e) + ")");
		}
		if (prod.size() == 1)
			sum.push_back(prod[0]);
		else {
			std::string m = "(*";
			for (const auto &f : prod)
				m += " " + f;
			sum.push_back(m + ")");
		}
	}
	if (sum.empty())
		return "0";
	if (sum.size() == 1)
		return sum[0];
	std::string r = "(+";
	for (const auto &s : sum)
		r += " " + s;
	return r + ")";
}

std::string print_formula(const Formula &f, const EFProblem &p)
{
	auto nary = [&](const char *op) {
		std::string r = std::string("(") + op;
		for (const Formula &k : f.children())
			r += " " + print_formula(k, p);
		return r + ")";
	};
	switch (f.kind()) {
	case Formula::Kind::True:
		return "true";
	case Formula::Kind::False:
		return "false";
	case Formula::Kind::Atom:
		if (auto *b = std::get_if<BoolAtom>(&f.atom()))
			return print_symbol(p.name(b->var));
		else {
			const PolyCmp &c = std::get<PolyCmp>(f.atom());
			const char *op = c.op == CmpOp::Ne ? "distinct" : op_symbol(c.op);
			return std::string("(") + op + " " + print_term(c.lhs, p) + " " + to_string(c.rhs) + ")";
		}
	case Formula::Kind::Not:
		return nary("not");
	case Formula::Kind::And:
		return nary("and");
	case Formula::Kind::Or:
		return nary("or");
	case Formula::Kind::Implies:
		return nary("=>");
	case Formula::Kind::Iff:
		return nary("iff");
	}
	throw Error(ErrorKind::Internal, "unknown formula kind");
}

ProblemFile problem_file(const EFProblem &p)
{
	ProblemFile f;
	f.declarations.exists_vars = p.exists_vars;
	f.declarations.forall_vars = p.forall_vars;
	if (!p.matrix.is_true())
		f.constrain.push_back(p.matrix);
	return f;
}

std::string print_problem(const ProblemFile &f)
{
	std::string out;
	if (f.preset) {
		out += "(preset " + f.preset->name;
		for (const auto &[k, v] : f.preset->args)
			out += " " + k + "=" + v;
		out += ")\n";
	}
	if (f.strategy)
		out += std::string("(set-strategy ") + strategy_name(*f.strategy) + ")\n";
	const EFProblem &p = f.declarations;
	for (const VarDecl &d : p.all_vars())
		out += std::string(p.is_exists(d.id) ? "(declare-exists " : "(declare-forall ") +
		       print_symbol(d.name) + " " + sort_name(d.sort) + ")\n";
	for (const Formula &a : f.assume)
		out += "(assume " + print_formula(a, p) + ")\n";
	for (const Formula &g : f.guarantee)
		out += "(guarantee " + print_formula(g, p) + ")\n";
	for (const Formula &c : f.constrain)
		out += "(constrain " + print_formula(c, p) + ")\n";
	return out;
}

} // namespace efsmt
