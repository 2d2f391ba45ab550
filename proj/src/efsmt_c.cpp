/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/efsmt.h"
#include "efsmt/frontend.hpp"

#include <cstdlib>
#include <cstring>
#include <new>

struct efsmt_problem {
	efsmt::ProblemFile file;
	efsmt::Job job;
};

struct efsmt_report {
	efsmt::RunReport report;
	std::vector<std::string> names, values;
};

namespace {

thread_local std::string last_error;
thread_local efsmt::SourceLoc last_loc{0, 0};

efsmt_status status_of(efsmt::ErrorKind k)
{
	switch (k) {
	case efsmt::ErrorKind::Usage: return EFSMT_ERR_USAGE;
	case efsmt::ErrorKind::Parse: return EFSMT_ERR_PARSE;
	case efsmt::ErrorKind::Config: return EFSMT_ERR_CONFIG;
	case efsmt::ErrorKind::Unsupported: return EFSMT_ERR_UNSUPPORTED;
	case efsmt::ErrorKind::Encoding: return EFSMT_ERR_ENCODING;
	case efsmt::ErrorKind::Degenerate: return EFSMT_ERR_DEGENERATE;
	case efsmt::ErrorKind::Internal: return EFSMT_ERR_INTERNAL;
	}
	return EFSMT_ERR_INTERNAL;
}

efsmt_status fail(efsmt_status s, const std::string &msg)
{
	last_error = msg;
	return s;
}

template <typename F>
efsmt_status guarded(F &&f)
{
	last_error.clear();
	last_loc = {0, 0};
	try {
		f();
		return EFSMT_OK;
	} catch (const efsmt::ParseError &e) {
		last_loc = e.loc;
		return fail(EFSMT_ERR_PARSE, e.what());
	} catch (const efsmt::Error &e) {
		return fail(status_of(e.kind), e.what());
	} catch (const std::bad_alloc &) {
		return fail(EFSMT_ERR_INTERNAL, "out of memory");
	} catch (const std::exception &e) {
		return fail(EFSMT_ERR_INTERNAL, e.what());
	}
}

char *dup(const std::string &s)
{
	char *r = static_cast<char *>(std::malloc(s.size() + 1));
	if (!r)
		throw std::bad_alloc();
	std::memcpy(r, s.c_str(), s.size() + 1);
	return r;
}

std::optional<efsmt::Rational> parse_step(const char *step)
{
	if (!step)
		return std::nullopt;
	efsmt::Rational q;
	try {
		q = efsmt::parse_rational(step);
	} catch (const efsmt::RationalSyntaxError &e) {
		throw efsmt::Error(efsmt::ErrorKind::Usage, std::string("--step: ") + e.what());
	}
	if (q <= 0)
		throw efsmt::Error(efsmt::ErrorKind::Usage, "--step must be positive");
	return q;
}

efsmt::EngineConfig engine_config(const efsmt_config *c)
{
	efsmt::EngineConfig cfg;
	efsmt_config d;
	efsmt_config_init(&d);
	if (!c)
		c = &d;
	if (c->strategy) {
		auto s = efsmt::parse_strategy(c->strategy);
		if (!s)
			throw efsmt::Error(efsmt::ErrorKind::Usage,
			                   std::string("unknown strategy '") + c->strategy +
			                   "' (la-la, la-bernstein, fixed-fixed, auto)");
		cfg.strategy = *s;
	}
	if (auto q = parse_step(c->step))
		cfg.fixed_step = *q;
	if (c->max_iterations)
		cfg.max_iterations = c->max_iterations;
	cfg.extrapolation = c->extrapolate != 0;
	cfg.bernstein_max_depth = c->depth;
	cfg.trace = c->trace != 0;
	cfg.verify_witness = c->verify != 0;
	cfg.projection = c->projection != 0;
	if (c->backend) {
		std::string b = c->backend;
		if (b == "internal")
			cfg.backend.kind = efsmt::BackendKind::Linear;
		else if (b.rfind("external:", 0) == 0 && b.size() > 9) {
			cfg.backend.kind = efsmt::BackendKind::External;
			cfg.backend.command = b.substr(9);
		} else
			throw efsmt::Error(efsmt::ErrorKind::Usage,
			                   "backend must be internal or external:<command>");
	}
	return cfg;
}

} // namespace

extern "C" {

const char *efsmt_version(void)
{
	return "0.1.0";
}

const char *efsmt_last_error(void)
{
	return last_error.c_str();
}

int efsmt_last_error_line(void)
{
	return last_loc.line;
}

int efsmt_last_error_column(void)
{
	return last_loc.column;
}

void efsmt_config_init(efsmt_config *cfg)
{
	if (!cfg)
		return;
	efsmt::EngineConfig d;
	cfg->strategy = nullptr;
	cfg->step = nullptr;
	cfg->max_iterations = d.max_iterations;
	cfg->extrapolate = d.extrapolation;
	cfg->depth = d.bernstein_max_depth;
	cfg->backend = nullptr;
	cfg->trace = d.trace;
	cfg->verify = d.verify_witness;
	cfg->projection = d.projection;
	cfg->seed = 0;
}

efsmt_status efsmt_problem_parse(const char *text, const char *step, efsmt_problem **out)
{
	if (!text || !out)
		return fail(EFSMT_ERR_USAGE, "null argument");
	*out = nullptr;
	return guarded([&] {
		auto p = std::make_unique<efsmt_problem>();
		p->file = efsmt::parse_problem(text);
		p->job = efsmt::make_job(p->file, parse_step(step));
		*out = p.release();
	});
}

void efsmt_problem_free(efsmt_problem *p)
{
	delete p;
}

efsmt_status efsmt_problem_print(const efsmt_problem *p, char **out)
{
	if (!p || !out)
		return fail(EFSMT_ERR_USAGE, "null argument");
	return guarded([&] { *out = dup(efsmt::print_problem(p->file)); });
}

efsmt_status efsmt_problem_print_expanded(const efsmt_problem *p, char **out)
{
	if (!p || !out)
		return fail(EFSMT_ERR_USAGE, "null argument");
	return guarded([&] {
		efsmt::ProblemFile f = efsmt::problem_file(p->job.problem);
		f.strategy = p->job.strategy;
		*out = dup(efsmt::print_problem(f));
	});
}

size_t efsmt_problem_exists_count(const efsmt_problem *p)
{
	return p ? p->job.problem.exists_vars.size() : 0;
}

size_t efsmt_problem_forall_count(const efsmt_problem *p)
{
	return p ? p->job.problem.forall_vars.size() : 0;
}

efsmt_status efsmt_solve(const efsmt_problem *p, const efsmt_config *cfg, efsmt_report **out)
{
	if (!p || !out)
		return fail(EFSMT_ERR_USAGE, "null argument");
	*out = nullptr;
	return guarded([&] {
		auto r = std::make_unique<efsmt_report>();
		r->report = efsmt::run(p->job, engine_config(cfg));
		for (const auto &[name, value] : r->report.witness) {
			r->names.push_back(name);
			r->values.push_back(efsmt::to_string(value));
		}
		*out = r.release();
	});
}

void efsmt_report_free(efsmt_report *r)
{
	delete r;
}

efsmt_verdict efsmt_report_verdict(const efsmt_report *r)
{
	if (!r)
		return EFSMT_UNKNOWN;
	switch (r->report.verdict) {
	case efsmt::Verdict::Kind::Valid: return EFSMT_VALID;
	case efsmt::Verdict::Kind::Invalid: return EFSMT_INVALID;
	case efsmt::Verdict::Kind::Unknown: return EFSMT_UNKNOWN;
	}
	return EFSMT_UNKNOWN;
}

unsigned efsmt_report_iterations(const efsmt_report *r)
{
	return r ? r->report.stats.iterations : 0;
}

size_t efsmt_report_witness_size(const efsmt_report *r)
{
	return r ? r->names.size() : 0;
}

const char *efsmt_report_witness_name(const efsmt_report *r, size_t i)
{
	return r && i < r->names.size() ? r->names[i].c_str() : nullptr;
}

const char *efsmt_report_witness_value(const efsmt_report *r, size_t i)
{
	return r && i < r->values.size() ? r->values[i].c_str() : nullptr;
}

efsmt_status efsmt_report_render(const efsmt_report *r, int sexp, char **out)
{
	if (!r || !out)
		return fail(EFSMT_ERR_USAGE, "null argument");
	return guarded([&] {
		*out = dup(sexp ? efsmt::render_sexp(r->report) + "\n" : efsmt::render_human(r->report));
	});
}

efsmt_status efsmt_bench(const char *suite, const efsmt_config *cfg, char **out, int *all_ok)
{
	if (!suite || !out)
		return fail(EFSMT_ERR_USAGE, "null argument");
	return guarded([&] {
		auto rows = efsmt::run_bench(suite, engine_config(cfg));
		bool ok = true;
		for (const auto &row : rows)
			ok = ok && row.ok();
		if (all_ok)
			*all_ok = ok;
		*out = dup(efsmt::render_bench(rows));
	});
}

efsmt_status efsmt_presets(char **out)
{
	if (!out)
		return fail(EFSMT_ERR_USAGE, "null argument");
	return guarded([&] {
		std::string s;
		for (const auto &[name, args] : efsmt::preset_list())
			s += name + (args.empty() ? "" : " " + args) + "\n";
		*out = dup(s);
	});
}

void efsmt_string_free(char *s)
{
	std::free(s);
}

} // extern "C"
