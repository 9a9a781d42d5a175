#include "tseq/chains.hpp"

#include <algorithm>

namespace tseq {

std::string to_string(ChainCase c) {
  switch (c) {
    case ChainCase::Eq3: return "eq3";
    case ChainCase::CaseA: return "case-a";
    case ChainCase::CaseB: return "case-b";
    case ChainCase::CaseC: return "case-c";
    case ChainCase::Eq4: return "eq4";
    case ChainCase::Eq5: return "eq5";
    case ChainCase::PruferGeom: return "prufer-geom";
  }
  throw Error("corrupt chain case");
}

std::optional<ChainCase> chain_case_from_string(const std::string& name) {
  for (ChainCase c : {ChainCase::Eq3, ChainCase::CaseA, ChainCase::CaseB, ChainCase::CaseC,
                      ChainCase::Eq4, ChainCase::Eq5, ChainCase::PruferGeom})
    if (to_string(c) == name) return c;
  return std::nullopt;
}

namespace {

Rational rat_abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

ChainLine make_line(std::string text, Rational lhs, std::string rel, Rational rhs) {
  ChainLine ln;
  ln.text = std::move(text);
  ln.lhs = std::move(lhs);
  ln.rhs = std::move(rhs);
  ln.rel = std::move(rel);
  if (ln.rel == "<") ln.holds = ln.lhs < ln.rhs;
  else if (ln.rel == "<=") ln.holds = ln.lhs <= ln.rhs;
  else if (ln.rel == ">") ln.holds = ln.lhs > ln.rhs;
  else if (ln.rel == ">=") ln.holds = ln.lhs >= ln.rhs;
  else if (ln.rel == "==") ln.holds = ln.lhs == ln.rhs;
  else if (ln.rel == "!=") ln.holds = ln.lhs != ln.rhs;
  else throw Error("unknown relation " + ln.rel);
  return ln;
}

ChainLine make_divides_line(std::string text, const BigInt& divisor, const BigInt& dividend) {
  ChainLine ln;
  ln.text = std::move(text);
  ln.lhs = Rational(divisor);
  ln.rhs = Rational(dividend);
  ln.rel = "divides";
  ln.holds = divides(divisor, dividend);
  return ln;
}

void require_shape(bool ok, const std::string& msg) {
  if (!ok) throw PreconditionViolated(msg);
}

struct ValidatedContext {
  long s = 0;      // number of odd-position terms
  long evens = 0;  // number of even-position terms
  BigInt weight = 0;
};

ValidatedContext validate_common(const SequenceSpec& spec, ChainCase case_id,
                                 const ChainContext& ctx, bool needs_target) {
  require_shape(ctx.k >= 0, "k must be >= 0");
  require_shape(ctx.odd_blocks.size() == ctx.odd_coeffs.size() &&
                    ctx.even_blocks.size() == ctx.even_coeffs.size(),
                "blocks and coefficients must pair up");
  ValidatedContext v;
  v.s = static_cast<long>(ctx.odd_blocks.size());
  v.evens = static_cast<long>(ctx.even_blocks.size());
  for (auto* blocks : {&ctx.odd_blocks, &ctx.even_blocks}) {
    for (std::size_t i = 0; i < blocks->size(); ++i) {
      require_shape((*blocks)[i] >= 1, "blocks must be >= 1");
      if (i > 0) require_shape((*blocks)[i] > (*blocks)[i - 1], "blocks must strictly increase");
    }
  }
  for (auto* coeffs : {&ctx.odd_coeffs, &ctx.even_coeffs})
    for (const BigInt& c : *coeffs) {
      require_shape(c != 0, "coefficients must be nonzero");
      v.weight += abs(c);
    }
  if (v.s + v.evens > 0)
    require_shape(v.weight <= ctx.k + 1, "pattern weight exceeds k+1");
  if (needs_target) {
    require_shape(ctx.target.ambient() == spec.ambient(),
                  "target must live in " + spec.ambient().str());
    require_shape(!ctx.target.is_zero(), "target must be nonzero");
  }
  if (ctx.m > 0) {
    if (!ctx.even_blocks.empty())
      require_shape(2 * ctx.even_blocks.front() >= ctx.m, "even positions must start at or after m");
    if (!ctx.odd_blocks.empty()) {
      if (case_id == ChainCase::CaseB)
        require_shape(ctx.m < 2 * ctx.odd_blocks.front() - 1,
                      "odd-only case needs its first position strictly after m");
      else
        require_shape(2 * ctx.odd_blocks.front() - 1 >= ctx.m,
                      "odd positions must start at or after m");
    }
  }
  return v;
}

// The pattern the context denotes, over real sequence indices.
SumPattern context_pattern(const ChainContext& ctx) {
  SumPattern pat;
  for (std::size_t i = 0; i < ctx.odd_blocks.size(); ++i)
    pat.terms.push_back({2 * ctx.odd_blocks[i] - 1, ctx.odd_coeffs[i]});
  for (std::size_t i = 0; i < ctx.even_blocks.size(); ++i)
    pat.terms.push_back({2 * ctx.even_blocks[i], ctx.even_coeffs[i]});
  std::sort(pat.terms.begin(), pat.terms.end(),
            [](const SumPattern::Term& a, const SumPattern::Term& b) { return a.index < b.index; });
  return pat;
}

std::string summarize(const ChainContext& ctx, bool with_target) {
  SumPattern pat = context_pattern(ctx);
  std::string out = pat.terms.empty() ? "(no pattern)" : "sigma = " + pat.str();
  if (with_target) out += ", g = " + ctx.target.str();
  out += ", k = " + std::to_string(ctx.k);
  if (ctx.m > 0) out += ", m = " + std::to_string(ctx.m);
  return out;
}

std::string pw(unsigned base, const std::string& e) {
  return std::to_string(base) + "^" + e;
}
std::string pw(unsigned base, long e) { return pw(base, std::to_string(e)); }

// |b| for the magnitude the chain must clear: |free part| for the split
// family, |g| for the integer family.
BigInt target_magnitude(const SequenceSpec& spec, const Element& g) {
  if (spec.family == SequenceSpec::Family::SplitSum) return abs(g.free_part());
  return abs(g.int_value());
}

// For the integer family the offset gamma rides on every odd term, so the
// cleared bound is |b| + (k+1)*gamma; the split family keeps the offset in
// the torsion coordinate and clears |b| alone.
Rational cleared_bound(const SequenceSpec& spec, const ChainContext& ctx) {
  BigInt b = target_magnitude(spec, ctx.target);
  if (spec.family == SequenceSpec::Family::IntegerGamma)
    return Rational(b + (ctx.k + 1) * spec.gamma);
  return Rational(b);
}

std::string cleared_bound_text(const SequenceSpec& spec) {
  return spec.family == SequenceSpec::Family::IntegerGamma ? "|b| + (k+1)*gamma" : "|b|";
}

}  // namespace

long select_i0(long r_s, const std::vector<long>& later_even_blocks, long k) {
  if (r_s < 6) throw NoValidGap("band choice needs r_s >= 6, got " + std::to_string(r_s));
  if (k < 0) throw NoValidGap("band choice needs k >= 0");
  long r3 = r_s * r_s * r_s;
  for (long i0 = 3; i0 <= r_s - 3; ++i0) {
    bool clear = true;
    for (long e : later_even_blocks)
      if (e >= r3 - (i0 + 2) * r_s && e <= r3 - (i0 - 1) * r_s) {
        clear = false;
        break;
      }
    if (clear) return i0;
  }
  throw NoValidGap("every admissible band is blocked by an even position");
}

namespace {

// --- even-only patterns ----------------------------------------------------

void eval_case_a(const SequenceCache& seq, const ChainContext& ctx, ChainReport& rep) {
  const SequenceSpec& spec = seq.spec();
  unsigned p = spec.base;
  long e1 = ctx.even_blocks.front();

  if (spec.family == SequenceSpec::Family::PruferSum) {
    Element sigma = pattern_value(seq, context_pattern(ctx));
    long z = ctx.target.circle_value().denominator() == 1
                 ? 0
                 : static_cast<long>(valuation(ctx.target.circle_value().denominator(), BigInt(p)));
    long qq = std::max<long>(z, spec.order_exp);
    Rational bound = Rational(ctx.k + 1) / Rational(pow_checked(BigInt(p), e1));
    rep.lines.push_back(make_line("||sigma|| <= (k+1)/" + pw(p, e1),
                                  sigma.circle_value().norm(), "<=", bound));
    Rational qnorm = Rational(1) / Rational(pow_checked(BigInt(p), qq));
    rep.lines.push_back(make_line("(k+1)/" + pw(p, e1) + " < 1/" + pw(p, qq), bound, "<", qnorm));
    rep.lines.push_back(make_line("1/" + pw(p, qq) + " <= ||g||", qnorm, "<=",
                                  ctx.target.circle_value().norm()));
    rep.lines.push_back(make_line("sigma != g", element_gap(sigma, ctx.target), ">", Rational(0)));
    return;
  }

  // Split / integer families: sigma's free value is sum l_i p^(e_i).
  BigInt sigma_free = 0;
  BigInt sigma_shifted = 0;  // sigma / p^(e_1)
  for (std::size_t i = 0; i < ctx.even_blocks.size(); ++i) {
    BigInt power = pow_checked(BigInt(p), ctx.even_blocks[i]);
    sigma_free += ctx.even_coeffs[i] * power;
    sigma_shifted +=
        ctx.even_coeffs[i] * pow_checked(BigInt(p), ctx.even_blocks[i] - e1);
  }
  Element sigma = pattern_value(seq, context_pattern(ctx));
  BigInt b = target_magnitude(spec, ctx.target);

  if (sigma_shifted == 0) {
    rep.branch = "sigma/p^e1 = 0";
    rep.lines.push_back(make_line("sigma == 0", Rational(sigma_free), "==", Rational(0)));
    rep.lines.push_back(
        make_line("g != 0", element_gap(ctx.target, Element::zero(ctx.target.ambient())), ">",
                  Rational(0)));
    rep.lines.push_back(make_line("sigma != g", element_gap(sigma, ctx.target), ">", Rational(0)));
    return;
  }

  rep.branch = "sigma/p^e1 != 0";
  BigInt pe1 = pow_checked(BigInt(p), e1);
  if (!b.fits_ulong_p())
    throw ExponentTooLarge("target magnitude too large for the 5|b| exponent");
  BigInt p5b = pow_checked(BigInt(p), 5 * b.get_ui());
  rep.lines.push_back(
      make_line("|sigma| >= " + pw(p, e1), Rational(abs(sigma_free)), ">=", Rational(pe1)));
  rep.lines.push_back(
      make_line(pw(p, e1) + " >= " + pw(p, "5|b|"), Rational(pe1), ">=", Rational(p5b)));
  rep.lines.push_back(make_line(pw(p, "5|b|") + " > |b|", Rational(p5b), ">", Rational(b)));
  rep.lines.push_back(make_line("sigma != g", element_gap(sigma, ctx.target), ">", Rational(0)));
}

// --- odd-only patterns -----------------------------------------------------

void eval_case_b_split_int(const SequenceCache& seq, const ChainContext& ctx, ChainReport& rep) {
  const SequenceSpec& spec = seq.spec();
  unsigned p = spec.base;
  long s = static_cast<long>(ctx.odd_blocks.size());
  long r_s = ctx.odd_blocks.back();
  unsigned long r3 = static_cast<unsigned long>(r_s) * r_s * r_s;

  BigInt F = 0;
  for (long i = 0; i < s; ++i) F += ctx.odd_coeffs[i] * tail_power_sum(p, ctx.odd_blocks[i]);
  BigInt f_rs = tail_power_sum(p, r_s);

  BigInt corr = 0;
  std::string corr_text = "0";
  if (s >= 2) {
    long r_prev = ctx.odd_blocks[s - 2];
    unsigned long prev3 = static_cast<unsigned long>(r_prev) * r_prev * r_prev;
    corr = BigInt(ctx.k + 1) * pow_checked(BigInt(p), prev3 + 1);
    corr_text = "(k+1)*" + pw(p, "r_(s-1)^3+1");
  }
  rep.lines.push_back(make_line("|sum l_i f(r_i)| " + std::string(s >= 2 ? ">" : ">=") +
                                    " f(r_s) - " + corr_text,
                                Rational(abs(F)), s >= 2 ? ">" : ">=", Rational(f_rs - corr)));
  rep.lines.push_back(make_line("f(r_s) - " + corr_text + " > " + pw(p, "r_s^3"),
                                Rational(f_rs - corr), ">", Rational(pow_checked(BigInt(p), r3))));

  Rational bound = cleared_bound(spec, ctx);
  rep.lines.push_back(make_line(pw(p, "r_s^3") + " > " + cleared_bound_text(spec),
                                Rational(pow_checked(BigInt(p), r3)), ">", bound));

  Element sigma = pattern_value(seq, context_pattern(ctx));
  BigInt b = target_magnitude(spec, ctx.target);
  BigInt sigma_magnitude = spec.family == SequenceSpec::Family::SplitSum
                               ? abs(sigma.free_part())
                               : abs(sigma.int_value());
  rep.lines.push_back(
      make_line("|sigma| > |b|", Rational(sigma_magnitude), ">", Rational(b)));
  rep.lines.push_back(make_line("sigma != g", element_gap(sigma, ctx.target), ">", Rational(0)));
}

void eval_case_b_prufer(const SequenceCache& seq, const ChainContext& ctx, ChainReport& rep) {
  const SequenceSpec& spec = seq.spec();
  unsigned p = spec.base;
  long r_s = ctx.odd_blocks.back();
  unsigned long r3 = static_cast<unsigned long>(r_s) * r_s * r_s;

  Element sigma = pattern_value(seq, context_pattern(ctx));
  const CircleRational& sv = sigma.circle_value();
  long alpha = sv.denominator() == 1
                   ? 0
                   : static_cast<long>(valuation(sv.denominator(), BigInt(p)));
  long z = ctx.target.circle_value().denominator() == 1
               ? 0
               : static_cast<long>(valuation(ctx.target.circle_value().denominator(), BigInt(p)));
  long qq = std::max<long>(z, spec.order_exp);

  rep.lines.push_back(make_line("den(sigma) = " + pw(p, "alpha") + " with alpha >= r_s^3 - k",
                                Rational(alpha), ">=", Rational(static_cast<long>(r3) - ctx.k)));
  rep.lines.push_back(
      make_line("r_s^3 - k > q", Rational(static_cast<long>(r3) - ctx.k), ">", Rational(qq)));
  rep.lines.push_back(make_line("q >= v_p(den(g))", Rational(qq), ">=", Rational(z)));
  rep.lines.push_back(make_line("den(sigma) > den(g)", Rational(sv.denominator()), ">",
                                Rational(ctx.target.circle_value().denominator())));
  rep.lines.push_back(make_line("sigma != g", element_gap(sigma, ctx.target), ">", Rational(0)));
}

// --- mixed patterns --------------------------------------------------------

struct MixedDecomposition {
  long i0 = 0;
  long left = 0, mid_lo = 0, mid_hi = 0, right = 0;
  BigInt a2 = 0;      // small part
  BigInt middle = 0;  // l_s (p^mid_lo + p^mid_hi)
  BigInt a4 = 0;      // large part, divisible by p^right
  BigInt f_total = 0;
  std::vector<long> low_evens, high_evens;
};

MixedDecomposition decompose_mixed(const SequenceSpec& spec, const ChainContext& ctx) {
  MixedDecomposition d;
  unsigned p = spec.base;
  long s = static_cast<long>(ctx.odd_blocks.size());
  long r_s = ctx.odd_blocks.back();
  const BigInt& l_s = ctx.odd_coeffs.back();
  long r3 = r_s * r_s * r_s;

  d.i0 = select_i0(r_s, ctx.even_blocks, ctx.k);
  d.left = r3 - (d.i0 + 2) * r_s;
  d.mid_lo = r3 - (d.i0 + 1) * r_s;
  d.mid_hi = r3 - d.i0 * r_s;
  d.right = r3 - (d.i0 - 1) * r_s;

  for (long i = 0; i + 1 < s; ++i)
    d.a2 += ctx.odd_coeffs[i] * tail_power_sum(p, ctx.odd_blocks[i]);
  for (long j = d.i0 + 2; j <= r_s; ++j)
    d.a2 += l_s * pow_checked(BigInt(p), static_cast<unsigned long>(r3 - j * r_s));
  for (long j = 0; j <= d.i0 - 1; ++j)
    d.a4 += l_s * pow_checked(BigInt(p), static_cast<unsigned long>(r3 - j * r_s));
  d.middle = l_s * (pow_checked(BigInt(p), static_cast<unsigned long>(d.mid_lo)) +
                    pow_checked(BigInt(p), static_cast<unsigned long>(d.mid_hi)));

  for (std::size_t w = 0; w < ctx.even_blocks.size(); ++w) {
    long e = ctx.even_blocks[w];
    BigInt v = ctx.even_coeffs[w] * pow_checked(BigInt(p), static_cast<unsigned long>(e));
    if (e < d.left) {
      d.a2 += v;
      d.low_evens.push_back(e);
    } else {
      d.a4 += v;
      d.high_evens.push_back(e);
    }
  }

  for (long i = 0; i < s; ++i)
    d.f_total += ctx.odd_coeffs[i] * tail_power_sum(p, ctx.odd_blocks[i]);
  for (std::size_t w = 0; w < ctx.even_blocks.size(); ++w)
    d.f_total += ctx.even_coeffs[w] *
                 pow_checked(BigInt(p), static_cast<unsigned long>(ctx.even_blocks[w]));
  return d;
}

void emit_eq4_lines(const SequenceSpec& spec, const ChainContext& ctx,
                    const MixedDecomposition& d, ChainReport& rep) {
  unsigned p = spec.base;
  long r_s = ctx.odd_blocks.back();
  BigInt p_left = pow_checked(BigInt(p), static_cast<unsigned long>(d.left));
  BigInt p_mid_lo = pow_checked(BigInt(p), static_cast<unsigned long>(d.mid_lo));
  BigInt three_k1 = 3 * (BigInt(ctx.k) + 1);
  rep.lines.push_back(make_line("|A2| < 3(k+1)*" + pw(p, "r_s^3-(i0+2)r_s"), Rational(abs(d.a2)),
                                "<", Rational(three_k1 * p_left)));
  rep.lines.push_back(make_line("3(k+1)*" + pw(p, "r_s^3-(i0+2)r_s") + " < " +
                                    pw(p, "r_s^3-(i0+1)r_s"),
                                Rational(three_k1 * p_left), "<", Rational(p_mid_lo)));
  rep.lines.push_back(
      make_line("3(k+1) < r_s", Rational(three_k1), "<", Rational(r_s)));
  rep.lines.push_back(make_line("r_s < " + pw(p, "r_s") + " - 1", Rational(r_s), "<",
                                Rational(pow_checked(BigInt(p), r_s) - 1)));
}

void emit_eq5_lines(const SequenceSpec& spec, const MixedDecomposition& d, ChainReport& rep) {
  unsigned p = spec.base;
  BigInt p_right = pow_checked(BigInt(p), static_cast<unsigned long>(d.right));
  rep.lines.push_back(
      make_divides_line(pw(p, "r_s^3-(i0-1)r_s") + " divides A4", p_right, d.a4));
  BigInt sigma2 = d.a4 / p_right;
  rep.lines.push_back(make_line("sigma'' = A4/" + pw(p, "r_s^3-(i0-1)r_s") + " is an integer",
                                Rational(sigma2 * p_right), "==", Rational(d.a4)));
}

}  // namespace

namespace detail {

std::vector<ChainLine> mixed_case_zero_branch_lines(unsigned base, long k, long r_s, long i0,
                                                    const BigInt& middle_abs,
                                                    const BigInt& small_abs,
                                                    const Rational& target_bound) {
  long r3 = r_s * r_s * r_s;
  BigInt p_mid_lo = pow_checked(BigInt(base), static_cast<unsigned long>(r3 - (i0 + 1) * r_s));
  BigInt p_mid_hi = pow_checked(BigInt(base), static_cast<unsigned long>(r3 - i0 * r_s));
  BigInt p_rs2 = pow_checked(BigInt(base), static_cast<unsigned long>(r_s) * r_s);
  std::vector<ChainLine> lines;
  lines.push_back(make_line("|middle| >= " + pw(base, "r_s^3-(i0+1)r_s") + " + " +
                                pw(base, "r_s^3-i0*r_s"),
                            Rational(middle_abs), ">=", Rational(p_mid_lo + p_mid_hi)));
  lines.push_back(make_line("|middle| - |A2| > " + pw(base, "r_s^2"),
                            Rational(middle_abs - small_abs), ">", Rational(p_rs2)));
  lines.push_back(make_line(pw(base, "r_s^2") + " > target bound", Rational(p_rs2), ">",
                            target_bound));
  (void)k;
  return lines;
}

}  // namespace detail

namespace {

void eval_mixed_split_int(const SequenceCache& seq, ChainCase case_id, const ChainContext& ctx,
                          ChainReport& rep) {
  const SequenceSpec& spec = seq.spec();
  unsigned p = spec.base;
  long r_s = ctx.odd_blocks.back();
  MixedDecomposition d = decompose_mixed(spec, ctx);
  rep.i0 = d.i0;
  rep.low_even_blocks = d.low_evens;
  rep.high_even_blocks = d.high_evens;

  rep.lines.push_back(make_line("F = A2 + middle + A4", Rational(d.f_total), "==",
                                Rational(d.a2 + d.middle + d.a4)));
  if (case_id == ChainCase::Eq4 || case_id == ChainCase::CaseC)
    emit_eq4_lines(spec, ctx, d, rep);
  if (case_id == ChainCase::Eq5 || case_id == ChainCase::CaseC)
    emit_eq5_lines(spec, d, rep);
  if (case_id != ChainCase::CaseC) return;

  BigInt p_right = pow_checked(BigInt(p), static_cast<unsigned long>(d.right));
  BigInt p_rs2 = pow_checked(BigInt(p), static_cast<unsigned long>(r_s) * r_s);
  BigInt sigma2 = d.a4 / p_right;
  Rational lower;  // the amount |F| provably exceeds

  if (sigma2 != 0) {
    rep.branch = "sigma'' != 0";
    rep.lines.push_back(
        make_line("|A4| >= " + pw(p, "r_s^3-(i0-1)r_s"), Rational(abs(d.a4)), ">=", Rational(p_right)));
    lower = Rational(abs(d.a4) - abs(d.middle) - abs(d.a2));
    rep.lines.push_back(make_line("|A4| - |middle| - |A2| > " + pw(p, "r_s^2"), lower, ">",
                                  Rational(p_rs2)));
    rep.lines.push_back(make_line("|F| >= |A4| - |middle| - |A2|", Rational(abs(d.f_total)), ">=",
                                  lower));
  } else {
    rep.branch = "sigma'' == 0";
    for (ChainLine& ln : detail::mixed_case_zero_branch_lines(
             p, ctx.k, r_s, d.i0, abs(d.middle), abs(d.a2), cleared_bound(spec, ctx)))
      rep.lines.push_back(std::move(ln));
    lower = Rational(abs(d.middle) - abs(d.a2));
    rep.lines.push_back(make_line("|F| >= |middle| - |A2|", Rational(abs(d.f_total)), ">=", lower));
  }

  Rational bound = cleared_bound(spec, ctx);
  if (sigma2 != 0)
    rep.lines.push_back(make_line(pw(p, "r_s^2") + " > " + cleared_bound_text(spec),
                                  Rational(p_rs2), ">", bound));

  Element sigma = pattern_value(seq, context_pattern(ctx));
  BigInt b = target_magnitude(spec, ctx.target);
  BigInt sigma_magnitude = spec.family == SequenceSpec::Family::SplitSum
                               ? abs(sigma.free_part())
                               : abs(sigma.int_value());
  rep.lines.push_back(make_line("|sigma| > |b|", Rational(sigma_magnitude), ">", Rational(b)));
  rep.lines.push_back(make_line("sigma != g", element_gap(sigma, ctx.target), ">", Rational(0)));
}

void eval_mixed_prufer(const SequenceCache& seq, const ChainContext& ctx, ChainReport& rep) {
  const SequenceSpec& spec = seq.spec();
  unsigned p = spec.base;
  long r_s = ctx.odd_blocks.back();
  const BigInt& l_s = ctx.odd_coeffs.back();
  long r3 = r_s * r_s * r_s;

  long i0 = select_i0(r_s, ctx.even_blocks, ctx.k);
  long mid_lo = r3 - (i0 + 1) * r_s;
  long right = r3 - (i0 - 1) * r_s;
  rep.i0 = i0;

  Element sigma = pattern_value(seq, context_pattern(ctx));
  BigInt p_mid_lo = pow_checked(BigInt(p), static_cast<unsigned long>(mid_lo));
  CircleRational scaled_sigma = sigma.circle_value().scaled(p_mid_lo);

  BigInt p_rs = pow_checked(BigInt(p), static_cast<unsigned long>(r_s));
  Rational r_geom = 0;
  for (long j = 0; j <= i0 - 1; ++j) {
    Rational term(1, pow_checked(BigInt(p), static_cast<unsigned long>((i0 + 1 - j)) * r_s));
    term.canonicalize();
    r_geom += term;
  }
  r_geom *= Rational(l_s);
  Rational r_ev = 0;
  for (std::size_t w = 0; w < ctx.even_blocks.size(); ++w) {
    long e = ctx.even_blocks[w];
    if (e > right) {
      Rational term(ctx.even_coeffs[w], pow_checked(BigInt(p), static_cast<unsigned long>(e - mid_lo)));
      term.canonicalize();
      r_ev += term;
      rep.high_even_blocks.push_back(e);
    } else {
      rep.low_even_blocks.push_back(e);
    }
  }

  Rational leading(l_s, p_rs);
  leading.canonicalize();
  CircleRational expected = CircleRational::from_rational(leading + r_geom + r_ev);
  rep.lines.push_back(make_line("p^(mid)*sigma == l_s/" + pw(p, "r_s") + " + R (mod 1)",
                                scaled_sigma.lift(), "==", expected.lift()));

  Rational k1_over(ctx.k + 1, 1);
  BigInt p_2rs = pow_checked(BigInt(p), 2 * static_cast<unsigned long>(r_s));
  Rational geom_factor(p_rs, p_rs - 1);
  geom_factor.canonicalize();
  Rational geom_bound = k1_over / Rational(p_2rs) * geom_factor;
  rep.lines.push_back(make_line("|R_geom| <= (k+1)/" + pw(p, "2r_s") + " * 1/(1-1/" + pw(p, "r_s") + ")",
                                rat_abs(r_geom), "<=", geom_bound));
  rep.lines.push_back(make_line("1/(1-1/" + pw(p, "r_s") + ") < 32/31", geom_factor, "<",
                                Rational(32, 31)));
  Rational ev_bound = Rational(ctx.k) / Rational(p_2rs * p);
  rep.lines.push_back(
      make_line("|R_evens| <= k/" + pw(p, "2r_s+1"), rat_abs(r_ev), "<=", ev_bound));

  Rational lead_abs(abs(l_s), p_rs);
  lead_abs.canonicalize();
  rep.lines.push_back(make_line("(k+1)/" + pw(p, "r_s") + " <= 1/2",
                                k1_over / Rational(p_rs), "<=", Rational(1, 2)));
  Rational floor_bound = lead_abs - rat_abs(r_geom) - rat_abs(r_ev);
  rep.lines.push_back(make_line("||p^(mid)*sigma|| >= |l_s|/" + pw(p, "r_s") + " - |R|",
                                scaled_sigma.norm(), ">=", floor_bound));
  rep.lines.push_back(make_line("|l_s|/" + pw(p, "r_s") + " - |R| > 0", floor_bound, ">",
                                Rational(0)));

  BigInt p_2k = pow_checked(BigInt(p), 2 * static_cast<unsigned long>(ctx.k));
  rep.lines.push_back(make_line("2k < " + pw(p, "2k"), Rational(2 * ctx.k), "<", Rational(p_2k)));
  rep.lines.push_back(make_line(pw(p, "2k") + " < " + pw(p, "r_s"), Rational(p_2k), "<",
                                Rational(p_rs)));

  CircleRational g_scaled = ctx.target.circle_value().scaled(p_mid_lo);
  rep.lines.push_back(make_line("||p^(mid)*g|| == 0", g_scaled.norm(), "==", Rational(0)));
  rep.lines.push_back(make_line("sigma != g", element_gap(sigma, ctx.target), ">", Rational(0)));
}

void eval_prufer_geom(const SequenceSpec& spec, const ChainContext& ctx, ChainReport& rep) {
  unsigned p = spec.base;
  long r_s = !ctx.odd_blocks.empty() ? ctx.odd_blocks.back() : ctx.geom_block;
  require_shape(r_s >= 1, "geometric bound needs a block (odd_blocks or geom_block)");
  BigInt p_rs = pow_checked(BigInt(p), static_cast<unsigned long>(r_s));
  Rational geom_factor(p_rs, p_rs - 1);
  geom_factor.canonicalize();
  rep.lines.push_back(make_line("1/(1-1/" + pw(p, "r_s") + ") < 32/31", geom_factor, "<",
                                Rational(32, 31)));
  BigInt p_2k = pow_checked(BigInt(p), 2 * static_cast<unsigned long>(ctx.k));
  rep.lines.push_back(make_line("2k < " + pw(p, "2k"), Rational(2 * ctx.k), "<", Rational(p_2k)));
  rep.lines.push_back(make_line(pw(p, "2k") + " < " + pw(p, "r_s"), Rational(p_2k), "<",
                                Rational(p_rs)));
}

void eval_eq3(const SequenceCache& seq, const ChainContext& ctx, ChainReport& rep) {
  const SequenceSpec& spec = seq.spec();
  unsigned p = spec.base;
  long v = static_cast<long>(ctx.odd_blocks.size());
  long r_v = ctx.odd_blocks.back();
  require_shape(!(v == 1 && abs(ctx.odd_coeffs[0]) == ctx.k + 1),
                "a single summand of full weight attains equality; excluded");
  BigInt lhs = 0;
  for (long i = 0; i < v; ++i) lhs += ctx.odd_coeffs[i] * tail_power_sum(p, ctx.odd_blocks[i]);
  BigInt f_rv = tail_power_sum(p, r_v);
  BigInt k1(ctx.k + 1);
  unsigned long rv3 = static_cast<unsigned long>(r_v) * r_v * r_v;
  rep.lines.push_back(make_line("|sum l_i f(r_i)| < (k+1) f(r_v)", Rational(abs(lhs)), "<",
                                Rational(k1 * f_rv)));
  rep.lines.push_back(make_line("(k+1) f(r_v) <= (k+1)*" + pw(p, "r_v^3+1"),
                                Rational(k1 * f_rv), "<=",
                                Rational(k1 * pow_checked(BigInt(p), rv3 + 1))));
}

}  // namespace

ChainReport check_inequality_chain(const SequenceCache& seq, ChainCase case_id,
                                   const ChainContext& ctx) {
  const SequenceSpec& spec = seq.spec();
  bool prufer = spec.family == SequenceSpec::Family::PruferSum;
  bool needs_target =
      case_id == ChainCase::CaseA || case_id == ChainCase::CaseB || case_id == ChainCase::CaseC ||
      (prufer && case_id == ChainCase::CaseC);

  ChainReport rep;
  rep.case_id = case_id;
  rep.spec = spec;

  ValidatedContext shape = validate_common(spec, case_id, ctx, needs_target);
  rep.context_summary = summarize(ctx, needs_target);

  switch (case_id) {
    case ChainCase::Eq3:
      require_shape(!prufer, "eq3 belongs to the split/integer families");
      require_shape(shape.s >= 1 && shape.evens == 0, "eq3 needs odd positions only");
      eval_eq3(seq, ctx, rep);
      break;
    case ChainCase::CaseA:
      require_shape(shape.evens >= 1 && shape.s == 0, "case-a needs even positions only");
      eval_case_a(seq, ctx, rep);
      break;
    case ChainCase::CaseB:
      require_shape(shape.s >= 1 && shape.evens == 0, "case-b needs odd positions only");
      if (prufer)
        eval_case_b_prufer(seq, ctx, rep);
      else
        eval_case_b_split_int(seq, ctx, rep);
      break;
    case ChainCase::CaseC:
    case ChainCase::Eq4:
    case ChainCase::Eq5:
      require_shape(shape.s >= 1 && shape.evens >= 1,
                    "mixed case needs both odd and even positions");
      if (prufer) {
        require_shape(case_id == ChainCase::CaseC, "eq4/eq5 belong to the split/integer families");
        eval_mixed_prufer(seq, ctx, rep);
      } else {
        eval_mixed_split_int(seq, case_id, ctx, rep);
      }
      break;
    case ChainCase::PruferGeom:
      require_shape(prufer, "the geometric bound belongs to the Prufer family");
      eval_prufer_geom(spec, ctx, rep);
      break;
  }

  rep.holds = true;
  for (const ChainLine& ln : rep.lines) rep.holds = rep.holds && ln.holds;
  return rep;
}

}  // namespace tseq
