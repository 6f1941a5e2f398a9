#include "fps/findrec.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fps/bridge.hpp"
#include "fps/database.hpp"
#include "../common/linear.hpp"

namespace fps {

namespace {

Field shift_index(const Field& f, const std::string& k, long t) {
  if (t == 0) return f;
  return f.substitute(k, Field::symbol(k) + Field(t));
}

/// A sequence s with sum_i q[i](k) s(k+i) = 0, q.back() the leading coefficient.
struct Seq {
  std::vector<Field> q;
  Expr term;
  std::vector<std::vector<Field>> reps;  // s(k+j) in terms of s(k), ..., s(k+o-1)

  std::size_t order() const { return q.size() - 1; }

  const std::vector<Field>& rep(std::size_t j, const std::string& k) {
    const std::size_t o = order();
    while (reps.size() <= j) {
      const std::size_t n = reps.size();
      std::vector<Field> r(o);
      if (n < o) {
        r[n] = Field(1);
      } else {
        const long t = static_cast<long>(n - o);
        const Field lead = shift_index(q[o], k, t);
        for (std::size_t i = 0; i < o; ++i) {
          if (q[i].is_zero()) continue;
          const Field c = -shift_index(q[i], k, t) / lead;
          const std::vector<Field> prev = reps[static_cast<std::size_t>(t) + i];
          for (std::size_t e = 0; e < o; ++e) {
            if (!prev[e].is_zero()) r[e] += c * prev[e];
          }
        }
      }
      reps.push_back(std::move(r));
    }
    return reps[j];
  }
};

/// coef(k) * prod of factor sequences.
struct Term {
  Field coef;
  std::vector<std::size_t> factors;
};

using Key = std::vector<std::pair<std::size_t, std::size_t>>;  // (sequence, offset), sorted

struct Space {
  std::string k;
  std::vector<Seq> seqs;
  std::vector<Term> terms;

  std::size_t dimension() const {
    std::size_t d = 0;
    for (const auto& t : terms) {
      std::size_t p = 1;
      for (std::size_t f : t.factors) p *= seqs[f].order();
      d += p;
    }
    return d;
  }

  /// a(k+j) in the product basis.
  std::map<Key, Field> shifted(std::size_t j) {
    std::map<Key, Field> out;
    for (const auto& t : terms) {
      std::map<Key, Field> acc{{Key{}, shift_index(t.coef, k, static_cast<long>(j))}};
      for (std::size_t f : t.factors) {
        const std::vector<Field> r = seqs[f].rep(j, k);
        std::map<Key, Field> next;
        for (const auto& [key, v] : acc) {
          for (std::size_t e = 0; e < r.size(); ++e) {
            if (r[e].is_zero()) continue;
            Key nk = key;
            nk.emplace_back(f, e);
            std::sort(nk.begin(), nk.end());
            next[nk] += v * r[e];
          }
        }
        acc = std::move(next);
      }
      for (const auto& [key, v] : acc) out[key] += v;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
  }
};

/// Polynomials p_0..p_r of degree <= d with sum p_j(k) a(k+j) = 0.
std::optional<std::map<int, Field>> solve_ansatz(const std::vector<std::map<Key, Field>>& v, int d,
                                                 const std::string& k) {
  const std::size_t r1 = v.size();
  const std::size_t width = r1 * static_cast<std::size_t>(d + 1);
  std::set<Key> keys;
  for (const auto& m : v) {
    for (const auto& [key, f] : m) keys.insert(key);
  }
  const Field kk = Field::symbol(k);
  std::vector<std::vector<Field>> rows;
  for (const auto& key : keys) {
    std::vector<Field> cols(width);
    for (std::size_t j = 0; j < r1; ++j) {
      auto it = v[j].find(key);
      if (it == v[j].end()) continue;
      Field x = it->second;
      for (int m = 0; m <= d; ++m, x *= kk) cols[j * static_cast<std::size_t>(d + 1) + m] = x;
    }
    for (auto& row : detail::identity_rows(cols, k)) rows.push_back(std::move(row));
  }
  const auto u = detail::kernel_vector(std::move(rows), width);
  if (!u) return std::nullopt;
  std::map<int, Field> out;
  for (std::size_t j = 0; j < r1; ++j) {
    Field p;
    for (int m = d; m >= 0; --m) p = p * kk + (*u)[j * static_cast<std::size_t>(d + 1) + m];
    out[static_cast<int>(j)] = p;
  }
  return out;
}

std::optional<std::map<int, Field>> minimal_recurrence(Space& sp, int max_order, int max_degree) {
  std::vector<std::map<Key, Field>> v{sp.shifted(0)};
  if (v[0].empty()) return std::map<int, Field>{{0, Field(1)}};
  for (int r = 1; r <= max_order; ++r) {
    v.push_back(sp.shifted(static_cast<std::size_t>(r)));
    for (int d = 0; d <= max_degree; ++d) {
      if (auto p = solve_ansatz(v, d, sp.k)) return p;
    }
  }
  return std::nullopt;
}

bool is_index_head(const Expr& e) { return e.kind() == Kind::Func && has_index_recurrence(e.name()); }

/// alpha, beta with e = alpha k + beta, alpha rational.
std::optional<std::pair<Rational, Expr>> affine(const Expr& e, const std::string& k) {
  const Expr beta = substitute(e, k, Expr(0));
  const auto alpha = to_field(expand(e - beta), {k});
  if (!alpha || !alpha->is_polynomial()) return std::nullopt;
  const Field a = *alpha / Field::symbol(k);
  if (!a.is_rational()) return std::nullopt;
  return std::make_pair(a.constant_value(), beta);
}

/// Pieces of a single product term.
struct Split {
  Field coef{1};
  Field cert{1};
  Expr hyper{1};
  std::vector<Expr> holo;
};

void absorb(const Expr& f, long power, const std::string& k, Split& s) {
  if (free_of(f, k)) {
    s.coef *= to_field_or_throw(f, {}).pow(power);
    return;
  }
  if (auto r = to_field(f, {k})) {
    s.coef *= r->pow(power);
    return;
  }
  auto fail = [&] { throw NonHypergeometricComponent("not a hypergeometric term in " + k + ": " + to_text(f)); };
  Field cert;
  if (f.kind() == Kind::Pow) {
    if (f.exponent().is_integer() && f.exponent().value().get_num().fits_slong_p()) {
      absorb(f.base(), power * f.exponent().value().get_num().get_si(), k, s);
      return;
    }
    if (!free_of(f.base(), k)) fail();
    const auto ab = affine(f.exponent(), k);
    if (!ab) fail();
    cert = to_field_or_throw(pow(f.base(), Expr(ab->first)), {});
  } else if (f.is_func("exp")) {
    const auto ab = affine(f.arg(0), k);
    if (!ab) fail();
    cert = to_field_or_throw(exp(Expr(ab->first)), {});
  } else if (f.is_func("factorial") || f.is_func("pochhammer")) {
    const bool fac = f.is_func("factorial");
    const Expr& arg = fac ? f.arg(0) : f.arg(1);
    if (!fac && !free_of(f.arg(0), k)) fail();
    const auto ab = affine(arg, k);
    if (!ab || ab->first.get_den() != 1 || ab->first == 0) fail();
    const long alpha = ab->first.get_num().get_si();
    // m = alpha k + beta; factorial: m! ; pochhammer: (a)_m = Gamma(a+m)/Gamma(a)
    const Field m = to_field_or_throw(arg, {k});
    const Field base = fac ? m + Field(1) : m + to_field_or_throw(f.arg(0), {});
    cert = Field(1);
    if (alpha > 0) {
      for (long t = 0; t < alpha; ++t) cert *= base + Field(t);
    } else {
      for (long t = 1; t <= -alpha; ++t) cert /= base - Field(t);
    }
  } else if (is_index_head(f)) {
    if (power < 0) fail();
    for (std::size_t i = 1; i < f.args().size(); ++i) {
      if (!free_of(f.arg(i), k)) fail();
    }
    const auto ab = affine(f.arg(0), k);
    if (!ab || ab->first != 1) fail();
    for (long t = 0; t < power; ++t) s.holo.push_back(f);
    return;
  } else {
    fail();
  }
  s.cert *= cert.pow(power);
  s.hyper = s.hyper * pow(f, Expr(power));
}

Split split_product(const Expr& e, const std::string& k) {
  Split s;
  if (e.kind() == Kind::Mul) {
    for (const auto& f : e.args()) absorb(f, 1, k, s);
  } else {
    absorb(e, 1, k, s);
  }
  return s;
}

std::vector<Expr> summands(const Expr& a) {
  const Expr e = expand(a);
  if (e.kind() == Kind::Add) return e.args();
  return {e};
}

Seq hyper_seq(const Expr& term, const Field& cert) { return Seq{{-cert, Field(1)}, term, {}}; }

Seq index_seq(const Expr& f, const std::string& k) {
  const long s = affine(f.arg(0), k)->second.value().get_num().get_si();
  std::vector<Field> rest;
  for (std::size_t i = 1; i + 1 < f.args().size(); ++i) rest.push_back(to_field_or_throw(f.arg(i), {}));
  const Field x = to_field_or_throw(f.args().back(), {});
  const auto r = index_recurrence(f.name(), Field::symbol(k) + Field(s), rest, x);
  if (!r) throw NonHypergeometricComponent("no index recurrence for " + to_text(f));
  return Seq{{r->a0, r->a1, r->a2}, f, {}};
}

/// Constant c with num(k) = c den(k), both hypergeometric with the same certificate.
Field similarity_constant(const Expr& num, const Expr& den, const std::string& k) {
  for (long v = 10; v < 40; ++v) {
    try {
      const Field d = evaluate_term(den, k, v);
      if (d.is_zero()) continue;
      return evaluate_term(num, k, v) / d;
    } catch (const std::domain_error&) {
    }
  }
  throw NonHypergeometricComponent("cannot compare similar terms " + to_text(num) + " and " + to_text(den));
}

Space build_space(const Expr& a, const std::string& k) {
  Space sp;
  sp.k = k;
  std::map<std::string, std::size_t> holo_ids;
  for (const auto& t : summands(a)) {
    Split s = split_product(t, k);
    if (s.coef.is_zero()) continue;
    Term term{s.coef, {}};
    if (!s.hyper.is_one() || s.holo.empty()) {
      std::size_t id = sp.seqs.size();
      for (std::size_t i = 0; i < sp.seqs.size(); ++i) {
        if (sp.seqs[i].order() == 1 && !is_index_head(sp.seqs[i].term) && -sp.seqs[i].q[0] == s.cert) id = i;
      }
      if (id == sp.seqs.size()) {
        sp.seqs.push_back(hyper_seq(s.hyper, s.cert));
      } else if (sp.seqs[id].term != s.hyper) {
        term.coef *= similarity_constant(s.hyper, sp.seqs[id].term, k);
      }
      term.factors.push_back(id);
    }
    for (const auto& f : s.holo) {
      const std::string key = to_text(f);
      auto it = holo_ids.find(key);
      if (it == holo_ids.end()) {
        it = holo_ids.emplace(key, sp.seqs.size()).first;
        sp.seqs.push_back(index_seq(f, k));
      }
      term.factors.push_back(it->second);
    }
    std::sort(term.factors.begin(), term.factors.end());
    sp.terms.push_back(std::move(term));
  }
  return sp;
}

bool defined_at(const Expr& a, const std::string& k, long v) {
  bool ok = true;
  const Expr masked = map_expr(a, [&](const Expr& e) {
    if (!is_index_head(e)) return e;
    const Expr n = substitute(e.arg(0), k, Expr(v));
    if (n.is_integer() && n.value() < 0) ok = false;
    return Expr::variable("~h");
  });
  if (!ok) return false;
  try {
    evaluate_term(masked, k, v);
  } catch (const std::domain_error&) {
    return false;
  }
  return true;
}

/// Smallest k0 such that a is defined on [k0, 20]; nullopt if defined on [-20, 20].
std::optional<long> definition_threshold(const Expr& a, const std::string& k) {
  for (long v = 20; v >= -20; --v) {
    if (!defined_at(a, k, v)) return v + 1;
  }
  return std::nullopt;
}

Seq seq_of(const HolonomicSequence& h) {
  if (h.re.coeffs.empty()) throw std::invalid_argument("empty recurrence annotation");
  Seq s;
  const int lo = h.re.coeffs.begin()->first;
  s.q.resize(static_cast<std::size_t>(h.re.coeffs.rbegin()->first - lo) + 1);
  for (const auto& [j, p] : h.re.coeffs) {
    s.q[static_cast<std::size_t>(j - lo)] = shift_index(Field(p), h.re.index, -lo);
  }
  s.term = h.term;
  return s;
}

}  // namespace

Field evaluate_term(const Expr& a, const std::string& k, long value) {
  const Expr e = substitute(a, k, Expr(value));
  bool bad = false;
  map_expr(e, [&](const Expr& x) {
    if ((x.is_func("factorial") && x.arg(0).is_integer() && x.arg(0).value() < 0) ||
        (is_index_head(x) && x.arg(0).is_integer() && x.arg(0).value() < 0)) {
      bad = true;
    }
    return x;
  });
  if (bad) throw std::domain_error("undefined at " + k + " = " + std::to_string(value));
  return to_field_or_throw(e, {});
}

HypergeomTermBasis decompose_term(const Expr& a, const std::string& k) {
  const Space sp = build_space(a, k);
  HypergeomTermBasis b;
  b.index = k;
  std::vector<Field> coef(sp.seqs.size());
  for (const auto& t : sp.terms) {
    if (t.factors.size() != 1 || sp.seqs[t.factors[0]].order() != 1) {
      throw NonHypergeometricComponent("term involves a holonomic sequence head");
    }
    coef[t.factors[0]] += t.coef;
  }
  for (std::size_t i = 0; i < sp.seqs.size(); ++i) {
    if (coef[i].is_zero()) continue;
    b.terms.push_back(BasisTerm{sp.seqs[i].term, -sp.seqs[i].q[0], coef[i]});
  }
  return b;
}

LinearRecurrence find_recursion(const Expr& a, const std::string& k, const FindRecursionOptions& opts) {
  Space sp = build_space(a, k);
  if (sp.dimension() > static_cast<std::size_t>(opts.cap)) {
    throw ClosureBoundExceeded("shift span dimension " + std::to_string(sp.dimension()) + " exceeds " +
                               std::to_string(opts.cap));
  }
  const auto p = minimal_recurrence(sp, opts.max_order, opts.max_degree);
  if (!p) throw NoRecurrenceFound(opts.max_order, opts.max_degree);
  return make_recurrence(k, *p, definition_threshold(a, k));
}

HolonomicSequence holonomic_sequence(const Expr& term, const std::string& k) {
  return HolonomicSequence{term, find_recursion(term, k)};
}

HolonomicSequence holonomic_closure(ClosureOp op, const std::vector<HolonomicSequence>& args,
                                    const ClosureOptions& opts) {
  if (args.empty()) throw std::invalid_argument("closure needs at least one sequence");
  const std::string k = args[0].re.index;
  for (const auto& h : args) {
    if (h.re.index != k) throw std::invalid_argument("closure arguments use different indices");
  }
  Space sp;
  sp.k = k;
  std::vector<Expr> parts;
  std::optional<long> valid;
  for (const auto& h : args) {
    if (h.re.valid_from) valid = std::max(valid.value_or(*h.re.valid_from), *h.re.valid_from);
  }
  Expr result;
  switch (op) {
    case ClosureOp::Add:
      for (const auto& h : args) {
        sp.terms.push_back(Term{Field(1), {sp.seqs.size()}});
        sp.seqs.push_back(seq_of(h));
        parts.push_back(h.term);
      }
      result = add(std::move(parts));
      break;
    case ClosureOp::Mul: {
      Term t{Field(1), {}};
      for (std::size_t i = 0; i < args.size(); ++i) {
        // Equal factors share a sequence so symmetric products are not double counted.
        std::size_t id = sp.seqs.size();
        for (std::size_t j = 0; j < i; ++j) {
          if (args[j].term == args[i].term && args[j].re.coeffs == args[i].re.coeffs) id = t.factors[j];
        }
        if (id == sp.seqs.size()) sp.seqs.push_back(seq_of(args[i]));
        t.factors.push_back(id);
        parts.push_back(args[i].term);
      }
      std::sort(t.factors.begin(), t.factors.end());
      sp.terms.push_back(std::move(t));
      result = mul(std::move(parts));
      break;
    }
    case ClosureOp::Shift: {
      if (args.size() != 1) throw std::invalid_argument("shift takes one sequence");
      Seq s = seq_of(args[0]);
      for (auto& c : s.q) c = shift_index(c, k, opts.shift);
      s.term = substitute(args[0].term, k, Expr::variable(k) + Expr(opts.shift));
      result = s.term;
      sp.seqs.push_back(std::move(s));
      sp.terms.push_back(Term{Field(1), {0}});
      if (valid) *valid -= opts.shift;
      break;
    }
    case ClosureOp::PolyScale:
      if (args.size() != 1) throw std::invalid_argument("poly_scale takes one sequence");
      if (!opts.scale.is_polynomial() || opts.scale.is_zero()) {
        throw std::invalid_argument("poly_scale needs a nonzero polynomial");
      }
      sp.seqs.push_back(seq_of(args[0]));
      sp.terms.push_back(Term{opts.scale, {0}});
      result = from_field(opts.scale) * args[0].term;
      break;
  }
  const std::size_t dim = sp.dimension();
  if (dim > static_cast<std::size_t>(opts.cap)) {
    throw ClosureBoundExceeded("shift span dimension " + std::to_string(dim) + " exceeds " + std::to_string(opts.cap));
  }
  const auto p = minimal_recurrence(sp, static_cast<int>(dim), opts.max_degree);
  if (!p) throw NoRecurrenceFound(static_cast<int>(dim), opts.max_degree);
  return HolonomicSequence{result, make_recurrence(k, *p, valid)};
}

}  // namespace fps
