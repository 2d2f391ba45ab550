/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/session.hpp"
#include "efsmt/smtlib.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace efsmt {

std::string smtlib_number(const Rational &q)
{
	auto integer = [](const Integer &z) {
		return z < 0 ? "(- " + Integer(-z).get_str() + ")" : z.get_str();
	};
	if (q.get_den() == 1)
		return integer(q.get_num());
	return "(/ " + integer(q.get_num()) + " " + q.get_den().get_str() + ")";
}

std::string smtlib_term(const Polynomial &p, const std::function<std::string(VarId)> &name)
{
	if (p.is_zero())
		return "0";
	std::vector<std::string> terms;
	for (const auto &[powers, coeff] : p.terms()) {
		std::vector<std::string> factors;
		if (powers.empty() || coeff != 1)
			factors.push_back(smtlib_number(coeff));
		for (auto [v, e] : powers)
			for (unsigned i = 0; i < e; ++i)
				factors.push_back(name(v));
		if (factors.size() == 1)
			terms.push_back(factors[0]);
		else {
			std::string t = "(*";
			for (auto &f : factors)
				t += " " + f;
			terms.push_back(t + ")");
		}
	}
	if (terms.size() == 1)
		return terms[0];
	std::string r = "(+";
	for (auto &t : terms)
		r += " " + t;
	return r + ")";
}

std::string smtlib_formula(const Formula &f, const std::function<std::string(VarId)> &name)
{
	using K = Formula::Kind;
	auto nary = [&](const char *op) {
		std::string r = std::string("(") + op;
		for (const Formula &c : f.children())
			r += " " + smtlib_formula(c, name);
		return r + ")";
	};
	switch (f.kind()) {
	case K::True: return "true";
	case K::False: return "false";
	case K::Atom:
		if (auto *b = std::get_if<BoolAtom>(&f.atom()))
			return name(b->var);
		else {
			const PolyCmp &c = std::get<PolyCmp>(f.atom());
			std::string l = smtlib_term(c.lhs, name), r = smtlib_number(c.rhs);
			if (c.op == CmpOp::Ne)
				return "(not (= " + l + " " + r + "))";
			return std::string("(") + op_symbol(c.op) + " " + l + " " + r + ")";
		}
	case K::Not: return nary("not");
	case K::And: return nary("and");
	case K::Or: return nary("or");
	case K::Implies: return nary("=>");
	case K::Iff: return nary("=");
	}
	return "true";
}

std::optional<Value> parse_smtlib_value(const Sexp &s)
{
	if (s.is_atom()) {
		if (s.atom == "true")
			return Value(true);
		if (s.atom == "false")
			return Value(false);
		try {
			return Value(parse_rational(s.atom));
		} catch (const RationalSyntaxError &) {
			return std::nullopt;
		}
	}
	if (s.head() == "-" && s.items.size() == 2) {
		auto v = parse_smtlib_value(s.items[1]);
		if (!v || !std::holds_alternative<Rational>(*v))
			return std::nullopt;
		return Value(Rational(-std::get<Rational>(*v)));
	}
	if (s.head() == "/" && s.items.size() == 3) {
		auto p = parse_smtlib_value(s.items[1]), q = parse_smtlib_value(s.items[2]);
		if (!p || !q || !std::holds_alternative<Rational>(*p) ||
		    !std::holds_alternative<Rational>(*q) || std::get<Rational>(*q) == 0)
			return std::nullopt;
		return Value(Rational(std::get<Rational>(*p) / std::get<Rational>(*q)));
	}
	return std::nullopt;
}

namespace {

struct ProcessFailure {
	std::string reason;
};

/* A child process with its standard input and output connected to pipes. */
class Child {
public:
	explicit Child(const std::string &command)
	{
		std::istringstream in(command);
		std::vector<std::string> argv;
		for (std::string w; in >> w;)
			argv.push_back(w);
		if (argv.empty())
			throw ProcessFailure{"empty solver command"};
		int to_child[2], from_child[2];
		if (pipe(to_child) != 0 || pipe(from_child) != 0)
			throw ProcessFailure{std::string("pipe: ") + std::strerror(errno)};
		struct sigaction sa{};
		sigaction(SIGPIPE, nullptr, &sa);
		if (sa.sa_handler == SIG_DFL)
			std::signal(SIGPIPE, SIG_IGN);
		pid_ = fork();
		if (pid_ < 0)
			throw ProcessFailure{std::string("fork: ") + std::strerror(errno)};
		if (pid_ == 0) {
			dup2(to_child[0], 0);
			dup2(from_child[1], 1);
			close(to_child[0]);
			close(to_child[1]);
			close(from_child[0]);
			close(from_child[1]);
			std::vector<char *> args;
			for (auto &a : argv)
				args.push_back(a.data());
			args.push_back(nullptr);
			execvp(args[0], args.data());
			_exit(127);
		}
		close(to_child[0]);
		close(from_child[1]);
		in_ = to_child[1];
		out_ = from_child[0];
		fcntl(in_, F_SETFD, FD_CLOEXEC);
		fcntl(out_, F_SETFD, FD_CLOEXEC);
	}

	~Child()
	{
		close(in_);
		close(out_);
		kill(pid_, SIGKILL);
		waitpid(pid_, nullptr, 0);
	}

	void send(const std::string &text)
	{
		std::size_t done = 0;
		while (done < text.size()) {
			ssize_t n = write(in_, text.data() + done, text.size() - done);
			if (n < 0) {
				if (errno == EINTR)
					continue;
				throw ProcessFailure{"backend process closed its input"};
			}
			done += n;
		}
	}

	/* One complete reply: non-blank, balanced, newline-terminated. */
	std::string receive(std::chrono::seconds timeout)
	{
		auto deadline = std::chrono::steady_clock::now() + timeout;
		for (;;) {
			std::size_t nl;
			std::size_t from = 0;
			while ((nl = buffer_.find('\n', from)) != std::string::npos) {
				std::string head = buffer_.substr(0, nl + 1);
				if (head.find_first_not_of(" \t\r\n") != std::string::npos &&
				    paren_balance(head) == 0) {
					buffer_.erase(0, nl + 1);
					return head;
				}
				from = nl + 1;
			}
			auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
				deadline - std::chrono::steady_clock::now());
			if (left.count() <= 0)
				throw ProcessFailure{"backend timed out"};
			pollfd p{out_, POLLIN, 0};
			int r = poll(&p, 1, static_cast<int>(left.count()));
			if (r < 0 && errno == EINTR)
				continue;
			if (r <= 0)
				throw ProcessFailure{"backend timed out"};
			char chunk[4096];
			ssize_t n = read(out_, chunk, sizeof chunk);
			if (n <= 0)
				throw ProcessFailure{"backend process exited"};
			buffer_.append(chunk, n);
		}
	}

private:
	pid_t pid_ = -1;
	int in_ = -1, out_ = -1;
	std::string buffer_;
};

class ExternalSession final : public SolverSession {
public:
	ExternalSession(std::vector<VarDecl> vars, std::string command, std::chrono::seconds timeout)
	: SolverSession(std::move(vars)), command_(std::move(command)), timeout_(timeout)
	{}

	std::unique_ptr<SolverSession> fresh() const override
	{
		return make_external_session(vars_, command_, timeout_);
	}
	const char *backend_name() const override { return "external"; }

protected:
	void on_push() override { forward("(push 1)\n"); }
	void on_pop() override { forward("(pop 1)\n"); }
	void on_assert(const Formula &f) override
	{
		if (!nonlinear_ && max_degree(f) > 1) {
			nonlinear_ = true;
			child_.reset();	/* logic changes; replay on next check */
		}
		forward("(assert " + smtlib_formula(f, name_fn()) + ")\n");
	}

	CheckResult do_check(const std::vector<Formula> &) override
	{
		for (const VarDecl &d : vars_)
			if (std::holds_alternative<FixedSort>(d.sort))
				return CheckResult::unknown("external backend: fixed-point sort of " + d.name);
		try {
			if (!child_)
				start();
			child_->send("(check-sat)\n");
			std::string reply = trim(child_->receive(timeout_));
			if (reply == "unsat")
				return CheckResult::unsat();
			if (reply == "unknown")
				return CheckResult::unknown("backend returned unknown");
			if (reply != "sat")
				return fail("unexpected reply: " + reply);
			if (vars_.empty())
				return CheckResult::sat({});
			std::string q = "(get-value (";
			for (std::size_t i = 0; i < vars_.size(); ++i)
				q += (i ? " " : "") + name_fn()(vars_[i].id);
			child_->send(q + "))\n");
			std::string values = child_->receive(timeout_);
			return parse_model(values);
		} catch (const ProcessFailure &e) {
			return fail(e.reason);
		} catch (const ParseError &e) {
			return fail(std::string("malformed reply: ") + e.what());
		}
	}

private:
	static std::string trim(const std::string &s)
	{
		auto b = s.find_first_not_of(" \t\r\n");
		auto e = s.find_last_not_of(" \t\r\n");
		return b == std::string::npos ? "" : s.substr(b, e - b + 1);
	}

	CheckResult fail(const std::string &why)
	{
		child_.reset();
		return CheckResult::unknown(why);
	}

	std::function<std::string(VarId)> name_fn() const
	{
		return [](VarId v) { return "v" + std::to_string(v); };
	}

	void forward(const std::string &cmd)
	{
		if (!child_)
			return;
		try {
			child_->send(cmd);
		} catch (const ProcessFailure &) {
			child_.reset();
		}
	}

	void start()
	{
		auto c = std::make_unique<Child>(command_);
		bool ints = false;
		for (const VarDecl &d : vars_)
			ints |= std::holds_alternative<IntSort>(d.sort);
		std::string logic = std::string("QF_") + (nonlinear_ ? "N" : "L") + (ints ? "IRA" : "RA");
		std::string script = "(set-option :produce-models true)\n(set-logic " + logic + ")\n";
		for (const VarDecl &d : vars_) {
			std::string n = name_fn()(d.id);
			const char *sort = is_bool(d.sort) ? "Bool"
			                   : std::holds_alternative<IntSort>(d.sort) ? "Int" : "Real";
			script += "(declare-fun " + n + " () " + sort + ")\n";
			if (const Interval *r = sort_range(d.sort))
				script += "(assert (and (<= " + smtlib_number(r->lo) + " " + n + ") (<= " + n +
				          " " + smtlib_number(r->hi) + ")))\n";
		}
		/* replay the assertion stack frame by frame */
		const auto &live = frames();
		for (std::size_t i = 0; i < live.size(); ++i) {
			if (i > 0)
				script += "(push 1)\n";
			for (const Formula &f : live[i]) {
				nonlinear_ |= max_degree(f) > 1;
				script += "(assert " + smtlib_formula(f, name_fn()) + ")\n";
			}
		}
		c->send(script);
		child_ = std::move(c);
	}

	CheckResult parse_model(const std::string &text)
	{
		auto sx = read_sexps(text);
		if (sx.size() != 1 || !sx[0].is_list)
			return fail("malformed get-value reply");
		Assignment m;
		for (const Sexp &pair : sx[0].items) {
			if (!pair.is_list || pair.items.size() != 2 || !pair.items[0].is_atom())
				return fail("malformed get-value entry");
			const std::string &n = pair.items[0].atom;
			if (n.size() < 2 || n[0] != 'v')
				return fail("unknown symbol in model: " + n);
			auto v = parse_smtlib_value(pair.items[1]);
			if (!v)
				return fail("unparsable value: " + to_string(pair.items[1]));
			m.set(static_cast<VarId>(std::stoul(n.substr(1))), *v);
		}
		return CheckResult::sat(std::move(m));
	}

	std::string command_;
	std::chrono::seconds timeout_;
	std::unique_ptr<Child> child_;
	bool nonlinear_ = false;
};

} // namespace

std::unique_ptr<SolverSession> make_external_session(std::vector<VarDecl> vars,
                                                     std::string command,
                                                     std::chrono::seconds timeout)
{
	return std::make_unique<ExternalSession>(std::move(vars), std::move(command), timeout);
}

} // namespace efsmt
