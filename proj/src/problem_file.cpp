// Copyright 2026 The qnls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnls/problem_file.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace qnls {

ProblemKind problem_kind(const Problem& problem) {
  switch (problem.index()) {
    case 0:
      return ProblemKind::kHomogeneous;
    case 1:
      return ProblemKind::kMixed;
    default:
      return ProblemKind::kInhomogeneous;
  }
}

const char* kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kHomogeneous:
      return "homogeneous";
    case ProblemKind::kMixed:
      return "mixed";
    case ProblemKind::kInhomogeneous:
      return "inhomogeneous";
  }
  return "unknown";
}

Index problem_n(const Problem& problem) {
  return std::visit([](const auto& s) { return s.n(); }, problem);
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

struct EquationData {
  int line = 0;
  std::vector<Entry> a;
  std::vector<Entry> lin;
  std::optional<double> constant;
  struct Term {
    std::vector<std::pair<Index, double>> c;
    std::map<int, std::vector<Entry>> bs;
  };
  std::vector<Term> terms;
};

class Parser {
 public:
  explicit Parser(std::istream& in) : in_(in) {}

  Problem run() {
    std::optional<int> version;
    std::optional<ProblemKind> kind;
    std::optional<long long> n;
    std::optional<long long> p;
    std::optional<long long> s;
    std::vector<EquationData> equations;
    EquationData* current = nullptr;

    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::istringstream ls(raw);
      std::vector<std::string> tok;
      for (std::string t; ls >> t;) tok.push_back(t);
      if (tok.empty()) continue;
      const std::string& key = tok[0];

      if (current == nullptr) {
        if (key == "version") {
          expect(tok, 2);
          version = static_cast<int>(integer(tok[1]));
          if (*version != 1) fail("unsupported version " + tok[1]);
        } else if (key == "kind") {
          expect(tok, 2);
          if (tok[1] == "homogeneous") {
            kind = ProblemKind::kHomogeneous;
          } else if (tok[1] == "mixed") {
            kind = ProblemKind::kMixed;
          } else if (tok[1] == "inhomogeneous") {
            kind = ProblemKind::kInhomogeneous;
          } else {
            fail("unknown kind '" + tok[1] + "'");
          }
        } else if (key == "n") {
          expect(tok, 2);
          n = integer(tok[1]);
        } else if (key == "p") {
          expect(tok, 2);
          p = integer(tok[1]);
        } else if (key == "s") {
          expect(tok, 2);
          s = integer(tok[1]);
        } else if (key == "equation") {
          expect(tok, 2);
          if (!version || !kind || !n || !p || !s) fail("header incomplete before first equation");
          const long long idx = integer(tok[1]);
          if (idx != static_cast<long long>(equations.size())) {
            fail("equations must appear in order starting at 0");
          }
          equations.emplace_back();
          current = &equations.back();
          current->line = line_;
        } else {
          fail("unexpected '" + key + "' outside an equation block");
        }
        continue;
      }

      if (key == "end") {
        expect(tok, 1);
        current = nullptr;
      } else if (key == "a") {
        expect(tok, 4);
        require_kind(kind, key, *kind != ProblemKind::kInhomogeneous);
        current->a.push_back({integer(tok[1]), integer(tok[2]), real(tok[3])});
      } else if (key == "lin") {
        expect(tok, 3);
        require_kind(kind, key, *kind != ProblemKind::kHomogeneous);
        current->lin.push_back({0, integer(tok[1]), real(tok[2])});
      } else if (key == "const") {
        expect(tok, 2);
        require_kind(kind, key, *kind != ProblemKind::kHomogeneous);
        if (current->constant) fail("duplicate const line");
        current->constant = real(tok[1]);
      } else if (key == "term") {
        expect(tok, 1);
        require_kind(kind, key, *kind == ProblemKind::kInhomogeneous);
        current->terms.emplace_back();
      } else if (key == "c") {
        expect(tok, 3);
        require_kind(kind, key, *kind == ProblemKind::kInhomogeneous);
        if (current->terms.empty()) fail("'c' outside a term");
        current->terms.back().c.push_back({integer(tok[1]), real(tok[2])});
      } else if (key == "B") {
        expect(tok, 5);
        require_kind(kind, key, *kind == ProblemKind::kInhomogeneous);
        if (current->terms.empty()) fail("'B' outside a term");
        const long long k = integer(tok[1]);
        if (k < 0) fail("negative factor index");
        current->terms.back().bs[static_cast<int>(k)].push_back(
            {integer(tok[2]), integer(tok[3]), real(tok[4])});
      } else {
        fail("unexpected '" + key + "' inside an equation block");
      }
    }
    if (current != nullptr) fail("unterminated equation block");
    if (!version || !kind || !n || !p || !s) fail("missing header line");
    if (*n < 1) fail("n must be positive");
    if (*p < 0) fail("p must be non-negative");
    if (*s < 0) fail("s must be non-negative");
    if (static_cast<long long>(equations.size()) != *n) {
      fail("expected " + std::to_string(*n) + " equations, found " +
           std::to_string(equations.size()));
    }
    return build(*kind, *n, static_cast<int>(*p), *s, equations);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

  void expect(const std::vector<std::string>& tok, size_t count) const {
    if (tok.size() != count) {
      fail("'" + tok[0] + "' expects " + std::to_string(count - 1) + " argument(s)");
    }
  }

  void require_kind(const std::optional<ProblemKind>& kind, const std::string& key, bool ok) const {
    if (!ok) fail("'" + key + "' not allowed for kind " + kind_name(*kind));
  }

  long long integer(const std::string& t) const {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(t.c_str(), &end, 10);
    if (errno != 0 || end == t.c_str() || *end != '\0') fail("invalid integer '" + t + "'");
    return v;
  }

  double real(const std::string& t) const {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (errno == ERANGE || end == t.c_str() || *end != '\0' || !std::isfinite(v)) {
      fail("invalid number '" + t + "'");
    }
    return v;
  }

  template <typename F>
  auto at_line(int line, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line, e.what());
    }
  }

  Problem build(ProblemKind kind, long long n, int p, long long s,
                const std::vector<EquationData>& eqs) {
    const Index nn = static_cast<Index>(n);
    Vector constants = Vector::Zero(nn);
    std::vector<Entry> lin;
    for (Index i = 0; i < nn; ++i) {
      if (eqs[i].constant) constants(i) = *eqs[i].constant;
      for (const Entry& e : eqs[i].lin) lin.push_back({i, e.col, e.value});
    }

    auto build_nonlinear = [&]() -> std::optional<PolynomialSystem> {
      if (p == 0) {
        for (const auto& e : eqs) {
          if (!e.a.empty()) throw ParseError(e.line, "'a' entries require p >= 1");
        }
        return std::nullopt;
      }
      const Index dim = at_line(line_, [&] { return tensor_dim(nn, p); });
      at_line(line_, [&] {
        require_desk_scale(dim, "tensor space n^p");
        return 0;
      });
      std::vector<SparseMatrix> mats;
      for (const auto& e : eqs) {
        mats.push_back(at_line(e.line, [&] { return SparseMatrix(dim, dim, e.a); }));
      }
      return at_line(line_, [&] {
        return PolynomialSystem(nn, p, static_cast<Index>(s), std::move(mats));
      });
    };

    switch (kind) {
      case ProblemKind::kHomogeneous: {
        auto sys = build_nonlinear();
        if (!sys) fail("homogeneous kind requires p >= 1");
        return std::move(*sys);
      }
      case ProblemKind::kMixed: {
        auto nl = build_nonlinear();
        SparseMatrix l = at_line(line_, [&] { return SparseMatrix(nn, nn, lin); });
        return at_line(line_, [&] {
          return MixedSystem(nn, constants, std::move(l), std::move(nl));
        });
      }
      case ProblemKind::kInhomogeneous: {
        std::vector<InhomogeneousPolynomial> polys;
        for (Index i = 0; i < nn; ++i) {
          InhomogeneousPolynomial g;
          if (!eqs[i].lin.empty()) {
            InhomogeneousTerm t{Vector::Zero(nn), {}};
            for (const Entry& e : eqs[i].lin) {
              if (e.col < 0 || e.col >= nn) throw ParseError(eqs[i].line, "lin index out of range");
              t.c(e.col) += e.value;
            }
            g.terms.push_back(std::move(t));
          }
          for (const auto& term : eqs[i].terms) {
            InhomogeneousTerm t{Vector::Zero(nn), {}};
            for (const auto& [j, v] : term.c) {
              if (j < 0 || j >= nn) throw ParseError(eqs[i].line, "c index out of range");
              t.c(j) += v;
            }
            int expected = 0;
            for (const auto& [k, entries] : term.bs) {
              if (k != expected++) throw ParseError(eqs[i].line, "B factors must be numbered from 0");
              t.Bs.push_back(at_line(eqs[i].line, [&] { return SparseMatrix(nn, nn, entries); }));
            }
            g.terms.push_back(std::move(t));
          }
          polys.push_back(std::move(g));
        }
        return at_line(line_, [&] {
          return InhomogeneousSystem(nn, constants, std::move(polys));
        });
      }
    }
    fail("unknown kind");
  }

  std::istream& in_;
  int line_ = 0;
};

void write_entries(std::ostringstream& out, const char* key, const SparseMatrix& m) {
  for (const Entry& e : m.entries()) {
    out << key << ' ' << e.row << ' ' << e.col << ' ' << format_double(e.value) << '\n';
  }
}

}  // namespace

Problem parse_problem(std::istream& in) { return Parser(in).run(); }

Problem parse_problem(const std::string& text) {
  std::istringstream in(text);
  return parse_problem(in);
}

Problem read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file '" + path + "'");
  return parse_problem(in);
}

std::string write_problem(const Problem& problem) {
  std::ostringstream out;
  const ProblemKind kind = problem_kind(problem);
  out << "version 1\n";
  out << "kind " << kind_name(kind) << '\n';
  if (const auto* sys = std::get_if<PolynomialSystem>(&problem)) {
    out << "n " << sys->n() << "\np " << sys->p() << "\ns " << sys->sparsity() << '\n';
    for (Index i = 0; i < sys->n(); ++i) {
      out << "equation " << i << '\n';
      write_entries(out, "a", sys->equations()[i]);
      out << "end\n";
    }
  } else if (const auto* ms = std::get_if<MixedSystem>(&problem)) {
    const auto& nl = ms->nonlinear();
    out << "n " << ms->n() << "\np " << (nl ? nl->p() : 0) << "\ns " << (nl ? nl->sparsity() : 0)
        << '\n';
    std::vector<std::vector<Entry>> rows(ms->n());
    for (const Entry& e : ms->linear().entries()) rows[e.row].push_back(e);
    for (Index i = 0; i < ms->n(); ++i) {
      out << "equation " << i << '\n';
      if (ms->constants()(i) != 0.0) out << "const " << format_double(ms->constants()(i)) << '\n';
      for (const Entry& e : rows[i]) out << "lin " << e.col << ' ' << format_double(e.value) << '\n';
      if (nl) write_entries(out, "a", nl->equations()[i]);
      out << "end\n";
    }
  } else {
    const auto& is = std::get<InhomogeneousSystem>(problem);
    out << "n " << is.n() << "\np " << is.max_factors() << "\ns " << is.max_sparsity() << '\n';
    for (Index i = 0; i < is.n(); ++i) {
      out << "equation " << i << '\n';
      if (is.constants()(i) != 0.0) out << "const " << format_double(is.constants()(i)) << '\n';
      for (const InhomogeneousTerm& t : is.equations()[i].terms) {
        out << "term\n";
        for (Index j = 0; j < t.c.size(); ++j) {
          if (t.c(j) != 0.0) out << "c " << j << ' ' << format_double(t.c(j)) << '\n';
        }
        for (size_t k = 0; k < t.Bs.size(); ++k) {
          for (const Entry& e : t.Bs[k].entries()) {
            out << "B " << k << ' ' << e.row << ' ' << e.col << ' ' << format_double(e.value)
                << '\n';
          }
        }
      }
      out << "end\n";
    }
  }
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw InputError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("cannot rename into '" + path + "': " + ec.message());
  }
}

}  // namespace qnls
