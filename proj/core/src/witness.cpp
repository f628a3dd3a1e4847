#include <campana/witness.hpp>

#include <campana/errors.hpp>

namespace campana {

Rational small_rational(std::mt19937_64& rng, bool nonzero) {
  while (true) {
    long num = long(rng() % 19) - 9;
    long den = long(rng() % 5) + 1;
    if (nonzero && num == 0) continue;
    return Rational(BigInt(num), BigInt(den));
  }
}

Rational split_parameter(std::mt19937_64& rng, bool square) {
  Rational x = small_rational(rng, true);
  return square ? x * x : x;
}

namespace {

Rational eval(const Circuit& c, NodeId id, const Assignment& values) { return c.evaluate(id, values); }

void witness_S(const Rational& a, const Rational& b, const Rational& t, const std::vector<std::string>& vars,
               Assignment& values) {
  if (a.is_zero() || b.is_zero()) throw WitnessUnavailable("S: zero parameter");
  Rational s;
  // With a = s^2 take x2 = 0; then 4b (x3^2 - a x4^2) = t^2 - 4 is solved by
  // x3 = (1+k)/2, s x4 = (k-1)/2 where k = (t^2/4 - 1)/b.
  if (rational_sqrt(a, s)) {
    Rational k = (t * t / Rational(4) - Rational(1)) / b;
    values[vars[0]] = Rational(0);
    values[vars[1]] = (Rational(1) + k) / Rational(2);
    values[vars[2]] = (k - Rational(1)) / (Rational(2) * s);
    return;
  }
  if (rational_sqrt(b, s)) {
    Rational k = (t * t / Rational(4) - Rational(1)) / a;
    values[vars[0]] = (Rational(1) + k) / Rational(2);
    values[vars[1]] = Rational(0);
    values[vars[2]] = (k - Rational(1)) / (Rational(2) * s);
    return;
  }
  throw WitnessUnavailable("S: neither " + a.to_string() + " nor " + b.to_string() + " is a square");
}

}  // namespace

void synthesize_witness(const Circuit& c, const WitnessTrace& tr, Assignment& values, std::mt19937_64& rng) {
  std::vector<Rational> params;
  for (NodeId p : tr.params) params.push_back(eval(c, p, values));
  Rational t = tr.kind == BlockKind::Disjoint ? Rational(0) : eval(c, tr.element, values);
  auto recurse = [&](std::size_t i) { synthesize_witness(c, tr.children.at(i), values, rng); };

  switch (tr.kind) {
    case BlockKind::S:
      witness_S(params[0], params[1], t, tr.vars, values);
      return;
    case BlockKind::T:
      values[tr.vars[0]] = small_rational(rng, false);
      recurse(0);
      recurse(1);
      return;
    case BlockKind::TUnit:
      if (t.is_zero()) throw WitnessUnavailable("T^x: zero has no inverse");
      recurse(0);
      values[tr.vars[0]] = t.inverse();
      recurse(1);
      return;
    case BlockKind::I: {
      const Rational& mult = params[2];
      if (mult.is_zero()) throw WitnessUnavailable("I: zero multiplier");
      // vars: x, y, u, v with t = c x^2 u and 1 - t = y^2 v, u and v nonzero.
      Rational x = small_rational(rng, true), y = small_rational(rng, true);
      Rational u, v;
      if (t.is_zero()) {
        x = Rational(0);
        u = small_rational(rng, true);
      } else {
        u = t / (mult * x * x);
      }
      Rational one_minus_t = Rational(1) - t;
      if (one_minus_t.is_zero()) {
        y = Rational(0);
        v = small_rational(rng, true);
      } else {
        v = one_minus_t / (y * y);
      }
      values[tr.vars[0]] = x;
      values[tr.vars[1]] = y;
      values[tr.vars[2]] = u;
      values[tr.vars[3]] = v;
      recurse(0);
      recurse(1);
      return;
    }
    case BlockKind::J:
      values[tr.vars[0]] = small_rational(rng, false);
      values[tr.vars[1]] = small_rational(rng, false);
      for (std::size_t i = 0; i < 4; ++i) recurse(i);
      return;
    case BlockKind::Jabcd:
      values[tr.vars[0]] = small_rational(rng, false);
      recurse(0);
      recurse(1);
      return;
    case BlockKind::InvJ:
      if (t.is_zero()) throw WitnessUnavailable("invJ: zero has no inverse");
      values[tr.vars[0]] = t.inverse();
      recurse(0);
      return;
    case BlockKind::Disjoint: {
      Rational prod(1);
      for (const auto& p : params) prod *= p;
      if (prod.is_zero()) throw WitnessUnavailable("disjoint: zero parameter");
      values[tr.vars[0]] = prod.inverse();
      values[tr.vars[1]] = small_rational(rng, false);
      recurse(0);
      recurse(1);
      return;
    }
    case BlockKind::Jn: {
      Rational y = small_rational(rng, true);
      values[tr.vars[0]] = t / y.pow(tr.n - 1);
      values[tr.vars[1]] = y;
      recurse(0);
      recurse(1);
      return;
    }
    case BlockKind::InvJn:
      if (t.is_zero()) throw WitnessUnavailable("invJn: zero has no inverse");
      values[tr.vars[0]] = t.inverse();
      recurse(0);
      return;
  }
}

}  // namespace campana
