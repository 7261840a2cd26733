// Copyright 2026 the cizeta authors
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

#include "cizeta/dwork.hpp"

#include <algorithm>
#include <cmath>

namespace cizeta {

namespace {

struct DworkPlan {
  mpq_class b;
  mpq_class stop;  // peel until residual levels reach this
  long zmax = 0;   // output y-degree horizon
  long vmax = 0;   // G truncation in y-degree
  int nwork = 0;
};

long ceil_q(const mpq_class& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return mpz_get_si(c.get_mpz_t());
}

DworkPlan plan_for(const VarietySpec& spec, int precision,
                   const std::optional<mpq_class>& b_override,
                   long vmax_override) {
  if (spec.field.a() != 1) throw InputError("dwork: q = p required");
  if (spec.degree_product_mod_p() == 0)
    throw InputError("dwork: p must not divide any degree");
  if (precision < 1) throw InputError("dwork: precision must be positive");
  const unsigned p = spec.field.p();

  DworkPlan pl;
  mpq_class lo(1, p - 1), hi(p, p - 1);
  lo.canonicalize();
  hi.canonicalize();
  if (b_override) {
    pl.b = *b_override;
    pl.b.canonicalize();
    if (!(pl.b > lo && pl.b < hi))
      throw InputError("dwork: b outside the open interval (1/(p-1), p/(p-1))");
  } else {
    pl.b = (lo + hi) / 2;
  }
  pl.stop = precision + 2;

  // Output terms of y-degree z come from G-coefficients of y-degree
  // p z + (p-1) r - |v_xi| whose stripped valuation is at least that over
  // p-1; keep z while the resulting level can still fall below the stop.
  long vximax = (long)spec.n - (long)spec.r;  // |v_xi| <= e - r <= n - r
  for (long z = 0;; ++z) {
    mpq_class lb =
        mpq_class((long)p * z + (long)(p - 1) * spec.r - vximax, p - 1) -
        pl.b * (z + (long)spec.r);
    if (lb >= pl.stop) {
      pl.zmax = z;
      break;
    }
    if (z > 100000) throw TruncationUncertified("no certifiable y-horizon");
  }
  pl.vmax = (long)p * pl.zmax + (long)(p - 1) * spec.r;
  long vmax_floor = ceil_q(mpq_class(precision) * (long)(p - 1)) + 4;
  pl.vmax = std::max(pl.vmax, vmax_floor);
  if (vmax_override > 0) {
    if (vmax_override < (long)p * pl.zmax + (long)(p - 1) * spec.r)
      throw TruncationUncertified("vmax override below the certified horizon");
    pl.vmax = vmax_override;
  }
  // Working digits: deepest lambda-layer touched is about
  // stop + b * (zmax + r); guard digits absorb representative divisions.
  pl.nwork = (int)ceil_q(pl.stop + pl.b * (pl.zmax + (long)spec.r)) + 6;
  return pl;
}

void add_term(const PadicCtx& ring, TopSeries& s, MonoKey k, const PVec& c) {
  auto it = s.find(k);
  if (it == s.end())
    s.emplace(std::move(k), c);
  else
    it->second = ring.add(it->second, c);
}

uint32_t full_mask(const VarietySpec& spec) {
  return (uint32_t(1) << spec.slots()) - 1;
}

}  // namespace

DworkEngine::DworkEngine(const VarietySpec& spec, int precision,
                         std::optional<mpq_class> b_override,
                         long vmax_override)
    : spec_(spec),
      n_target_(precision),
      ring_(spec.field.p(),
            plan_for(spec, precision, b_override, vmax_override).nwork) {
  spec_.validate();
  DworkPlan pl = plan_for(spec_, precision, b_override, vmax_override);
  b_ = pl.b;
  stop_level_ = pl.stop;
  zmax_ = pl.zmax;
  vmax_ = pl.vmax;
  const unsigned p = ring_.p();

  inv_u_lambda_ = ring_.invert_unit(ring_.u_lambda());

  for (long e = spec_.r; e <= (long)spec_.n; ++e)
    for (const FormKey& k : monomial_basis(spec_, e)) {
      basis_e_.push_back(e);
      basis_keys_.push_back(k);
    }

  // dH/dt tables: H = sum_l gamma_l F-hat(x^{p^l}, y^{p^l}) with Teichmueller
  // coefficients; terms beyond the working precision are dropped.
  int LH = 0;
  {
    double pe = p;
    while (pe * p / (p - 1) - (LH + 2) < ring_.nwork() && LH < 10) {
      ++LH;
      pe *= p;
    }
  }
  auto gl = gamma_partial_sums(ring_, LH);
  dh_.assign(spec_.slots(), {});
  for (int l = 0; l <= LH; ++l) {
    uint64_t pl_pow = 1;
    for (int i = 0; i < l; ++i) pl_pow *= p;
    for (unsigned j = 0; j < spec_.r; ++j) {
      for (const auto& [tvec, cf] : spec_.polys[j].terms) {
        PVec base = ring_.mul(gl[(size_t)l], ring_.teichmuller(cf[0]));
        if (ring_.is_zero(base)) continue;
        // d/dx_i contribution.
        for (unsigned i = 0; i <= spec_.n; ++i) {
          if (tvec[i] == 0) continue;
          DHTerm t;
          t.du.assign(spec_.n + 1, 0);
          t.dv.assign(spec_.r, 0);
          bool overflow = false;
          for (unsigned s = 0; s <= spec_.n; ++s) {
            uint64_t v = (uint64_t)tvec[s] * pl_pow;
            if (v > kMaxExponent) overflow = true;
            t.du[s] = (uint16_t)v;
          }
          if (overflow) throw TooLarge("dH exponent overflow");
          t.du[i] = (uint16_t)(t.du[i] - 1);
          t.dv[j] = (uint16_t)pl_pow;
          t.c = ring_.scale(pl_pow % ring_.modulus() * tvec[i] %
                                ring_.modulus(),
                            base);
          if (!ring_.is_zero(t.c)) dh_[i].push_back(std::move(t));
        }
        // d/dy_j contribution.
        DHTerm t;
        t.du.assign(spec_.n + 1, 0);
        t.dv.assign(spec_.r, 0);
        bool overflow = false;
        for (unsigned s = 0; s <= spec_.n; ++s) {
          uint64_t v = (uint64_t)tvec[s] * pl_pow;
          if (v > kMaxExponent) overflow = true;
          t.du[s] = (uint16_t)v;
        }
        if (overflow) throw TooLarge("dH exponent overflow");
        t.dv[j] = (uint16_t)(pl_pow - 1);
        t.c = ring_.scale(pl_pow % ring_.modulus(), base);
        if (!ring_.is_zero(t.c)) dh_[spec_.n + 1 + j].push_back(std::move(t));
      }
    }
  }

  // G = prod over F-terms of theta(a-hat x^t y_j), truncated at |v| <= vmax.
  auto lam = splitting_coeffs(ring_, (int)vmax_);
  G_.clear();
  {
    MonoKey zero_key;
    zero_key.u.assign(spec_.n + 1, 0);
    zero_key.v.assign(spec_.r, 0);
    G_.emplace(zero_key, ring_.one());
  }
  for (unsigned j = 0; j < spec_.r; ++j) {
    for (const auto& [tvec, cf] : spec_.polys[j].terms) {
      PVec ahat = ring_.teichmuller(cf[0]);
      // Factor theta(ahat x^t y_j) = sum_k lambda_k ahat^k x^{kt} y_j^k.
      std::vector<PVec> fc((size_t)vmax_ + 1);
      PVec apow = ring_.one();
      for (long k = 0; k <= vmax_; ++k) {
        fc[(size_t)k] = ring_.mul(lam[(size_t)k], apow);
        if (k < vmax_) apow = ring_.mul(apow, ahat);
      }
      TopSeries next;
      for (const auto& [key, c] : G_) {
        long have = 0;
        for (auto z : key.v) have += z;
        for (long k = 0; k <= vmax_ - have; ++k) {
          if (ring_.is_zero(fc[(size_t)k])) continue;
          MonoKey nk = key;
          bool overflow = false;
          for (unsigned s = 0; s <= spec_.n; ++s) {
            uint64_t v = (uint64_t)nk.u[s] + (uint64_t)tvec[s] * (uint64_t)k;
            if (v > kMaxExponent) overflow = true;
            nk.u[s] = (uint16_t)v;
          }
          if (overflow) throw TooLarge("G exponent overflow");
          nk.v[j] = (uint16_t)(nk.v[j] + k);
          add_term(ring_, next, std::move(nk), ring_.mul(c, fc[(size_t)k]));
        }
      }
      for (auto it = next.begin(); it != next.end();)
        it = ring_.is_zero(it->second) ? next.erase(it) : std::next(it);
      G_ = std::move(next);
    }
  }
}

mpq_class DworkEngine::level_of(const MonoKey& k, const PVec& c) const {
  long w = spec_.r;
  for (auto z : k.v) w += z;
  mpq_class lv(ring_.ord_lambda(c), ring_.p() - 1);
  lv.canonicalize();
  return lv - b_ * w;
}

TopSeries DworkEngine::prune(TopSeries s, const mpq_class& cutoff) const {
  for (auto it = s.begin(); it != s.end();) {
    if (ring_.is_zero(it->second) || level_of(it->first, it->second) >= cutoff)
      it = s.erase(it);
    else
      ++it;
  }
  return s;
}

TopSeries DworkEngine::frobenius_on_form(const FormKey& xi) const {
  const unsigned p = ring_.p();
  TopSeries out;
  long sum_d = 0;
  for (auto d : spec_.degrees) sum_d += d;
  for (const auto& [key, c] : G_) {
    MonoKey ok;
    ok.u.assign(spec_.n + 1, 0);
    ok.v.assign(spec_.r, 0);
    bool match = true;
    for (unsigned i = 0; i <= spec_.n && match; ++i) {
      long t = (long)key.u[i] + xi.xexp[i] - (long)(p - 1);
      if (t < 0 || t % p) match = false;
      else ok.u[i] = (uint16_t)(t / p);
    }
    for (unsigned j = 0; j < spec_.r && match; ++j) {
      long t = (long)key.v[j] + xi.yexp[j] - (long)(p - 1);
      if (t < 0 || t % p) match = false;
      else ok.v[j] = (uint16_t)(t / p);
    }
    if (!match) continue;
    add_term(ring_, out, std::move(ok), c);
  }
  out = prune(std::move(out), stop_level_);
  // s = 0 homogeneity: sum u + (n+1) = sum z_j d_j + sum d_j.
  for (const auto& [key, c] : out) {
    long su = 0, sz = 0;
    for (auto e : key.u) su += e;
    for (unsigned j = 0; j < spec_.r; ++j) sz += (long)key.v[j] * spec_.degrees[j];
    if (su + (long)spec_.n + 1 != sz + sum_d)
      throw Error("frobenius output violates the weight grading");
  }
  return out;
}

TopSeries DworkEngine::apply_boundary(const EtaSeries& eta) const {
  return apply_boundary(eta, stop_level_);
}

TopSeries DworkEngine::apply_boundary(const EtaSeries& eta,
                                      const mpq_class& cutoff) const {
  TopSeries out;
  for (const auto& [ek, c] : eta) {
    if (ring_.is_zero(c)) continue;
    const unsigned s = ek.missing;
    const bool negate = (s % 2) != 0;  // move dt past the s earlier slots
    auto push = [&](MonoKey k, PVec coeff) {
      if (negate) coeff = ring_.neg(coeff);
      if (!ring_.is_zero(coeff)) add_term(ring_, out, std::move(k), coeff);
    };
    // Exterior derivative in the missing variable.
    if (s <= spec_.n) {
      if (ek.m.u[s] > 0) {
        MonoKey k = ek.m;
        k.u[s] -= 1;
        push(std::move(k), ring_.scale(ek.m.u[s], c));
      }
    } else {
      unsigned j = s - spec_.n - 1;
      if (ek.m.v[j] > 0) {
        MonoKey k = ek.m;
        k.v[j] -= 1;
        push(std::move(k), ring_.scale(ek.m.v[j], c));
      }
    }
    // dH wedge part.
    for (const DHTerm& t : dh_[s]) {
      MonoKey k = ek.m;
      bool overflow = false;
      for (unsigned i = 0; i <= spec_.n; ++i) {
        uint32_t v = (uint32_t)k.u[i] + t.du[i];
        if (v > kMaxExponent) overflow = true;
        k.u[i] = (uint16_t)v;
      }
      for (unsigned j = 0; j < spec_.r; ++j) {
        uint32_t v = (uint32_t)k.v[j] + t.dv[j];
        if (v > kMaxExponent) overflow = true;
        k.v[j] = (uint16_t)v;
      }
      if (overflow) throw TooLarge("boundary exponent overflow");
      push(std::move(k), ring_.mul(t.c, c));
    }
  }
  return prune(std::move(out), cutoff);
}

const BoundaryPiece& DworkEngine::piece(long e) const {
  auto it = pieces_.find(e);
  if (it == pieces_.end())
    it = pieces_.emplace(e, boundary_piece(spec_, e)).first;
  return it->second;
}

PVec DworkEngine::div_lambda(const PVec& x) const {
  return ring_.div_exact_p(
      ring_.mul(ring_.mul(x, ring_.lambda_pow((long)ring_.p() - 2)),
                inv_u_lambda_));
}

ReduceResult DworkEngine::reduce_to_basis(TopSeries omega) const {
  const FieldCtx& F = spec_.field;
  const uint32_t fmask = full_mask(spec_);
  const unsigned p = ring_.p();

  std::map<FormKey, size_t> basis_index;
  for (size_t i = 0; i < basis_keys_.size(); ++i)
    basis_index.emplace(basis_keys_[i], i);

  // Pre-shift by lambda so boundary corrections stay integral even for
  // unit-valuation slices; coordinates are divided back out at the end.
  // When the slice valuation walks down to zero (the exterior-derivative
  // part of a correction can lower ord by one while the weight drops), the
  // whole residual is re-shifted by another lambda; each extra shift moves
  // the peel cutoff up by 1/(p-1) so the true cutoff is unchanged, at the
  // cost of 1/(p-1) from the final certificate.
  omega = prune(std::move(omega), stop_level_);
  for (auto& [k, c] : omega) c = ring_.mul(c, ring_.lambda());
  long shift = 1;
  const long max_shift = 1 + 3 * (long)(p - 1);
  mpq_class cutoff = stop_level_;
  const mpq_class lstep(1, (long)p - 1);

  ReduceResult res;
  res.coords.assign(basis_keys_.size(), ring_.zero());
  mpq_class prev_level;
  bool have_prev = false;

  for (int iter = 0;; ++iter) {
    // Drop exhausted terms, find the current minimum level.
    for (auto it = omega.begin(); it != omega.end();) {
      if (ring_.is_zero(it->second) ||
          level_of(it->first, it->second) >= cutoff)
        it = omega.erase(it);
      else
        ++it;
    }
    if (omega.empty()) break;
    if (iter > 100000) throw NoConvergence("reduction iteration cap reached");

    mpq_class lmin;
    bool first = true;
    long omin = PadicCtx::kOrdInf;
    for (const auto& [k, c] : omega) {
      mpq_class lv = level_of(k, c);
      if (first || lv < lmin) lmin = lv;
      first = false;
    }
    for (const auto& [k, c] : omega) {
      if (level_of(k, c) != lmin) continue;
      omin = std::min(omin, ring_.ord_lambda(c));
    }
    if (omin == 0) {
      if (shift >= max_shift)
        throw PrecisionExhausted("reduction shift exceeds the precision slack");
      for (auto& [k, c] : omega) c = ring_.mul(c, ring_.lambda());
      for (auto& c : res.coords) c = ring_.mul(c, ring_.lambda());
      ++shift;
      cutoff += lstep;
      continue;
    }
    mpq_class lmin_true = lmin - mpq_class(shift, (long)p - 1);
    lmin_true.canonicalize();
    if (have_prev && !(lmin_true > prev_level)) {
      std::string trace = "residual level stalled at iteration " +
                          std::to_string(iter);
      for (const auto& [k, c] : omega) {
        if (level_of(k, c) != lmin) continue;
        trace += "; term u=";
        for (auto e : k.u) trace += std::to_string(e) + ",";
        trace += " v=";
        for (auto e : k.v) trace += std::to_string(e) + ",";
        trace += " ord=" + std::to_string(ring_.ord_lambda(c));
      }
      throw NoConvergence(trace);
    }
    prev_level = lmin_true;
    have_prev = true;
    res.level_trace.push_back(lmin_true);

    // Slice terms at the minimal level, grouped by weight e = |z| + r.
    std::map<long, std::vector<const std::pair<const MonoKey, PVec>*>> groups;
    for (const auto& kv : omega) {
      if (level_of(kv.first, kv.second) != lmin) continue;
      long e = spec_.r;
      for (auto z : kv.first.v) e += z;
      groups[e].push_back(&kv);
    }

    EtaSeries corrections;
    std::vector<std::pair<MonoKey, PVec>> direct_subs;
    for (const auto& [e, terms] : groups) {
      const BoundaryPiece& bp = piece(e);
      std::map<FormKey, size_t> tindex;
      for (size_t t = 0; t < bp.targets.size(); ++t)
        tindex.emplace(bp.targets[t], t);
      std::vector<FqElem> v(bp.targets.size(), F.zero());
      long o = -1;
      for (const auto* kv : terms) {
        long ord = ring_.ord_lambda(kv->second);
        if (o < 0) o = ord;
        if (ord != o) throw Error("inconsistent slice valuation");
        FormKey fk{kv->first.u, kv->first.v, fmask};
        auto it = tindex.find(fk);
        if (it == tindex.end()) throw Error("slice term outside the graded piece");
        v[it->second] = F.from_int((int64_t)ring_.residue_at(kv->second, o));
      }
      std::vector<FqElem> coords, etav;
      bp.solver.decompose(v, coords, etav);
      for (size_t t = 0; t < coords.size(); ++t) {
        if (F.is_zero(coords[t])) continue;
        auto bit = basis_index.find(bp.targets[t]);
        if (bit == basis_index.end())
          throw Error("cohomology class outside the basis range");
        PVec contrib = ring_.monomial(coords[t][0], o);
        res.coords[bit->second] = ring_.add(res.coords[bit->second], contrib);
        direct_subs.emplace_back(MonoKey{bp.targets[t].xexp, bp.targets[t].yexp},
                                 contrib);
      }
      // eta correction: nu lambda^{o-1} eta-bar, whose boundary leads with
      // lambda^o dF-bar wedge eta-bar.
      PVec sc = ring_.mul(ring_.nu(), ring_.lambda_pow(o - 1));
      for (size_t t = 0; t < etav.size(); ++t) {
        if (F.is_zero(etav[t])) continue;
        const FormKey& sk = bp.sources[t];
        unsigned missing = 0;
        uint32_t absent = fmask & ~sk.diff;
        while (!(absent & (uint32_t(1) << missing))) ++missing;
        EtaKey ek{missing, MonoKey{sk.xexp, sk.yexp}};
        PVec val = ring_.scale(etav[t][0], sc);
        auto eit = corrections.find(ek);
        if (eit == corrections.end())
          corrections.emplace(std::move(ek), std::move(val));
        else
          eit->second = ring_.add(eit->second, val);
      }
    }
    for (auto& [k, c] : direct_subs) {
      auto it = omega.find(k);
      if (it == omega.end()) throw Error("basis subtraction misses its term");
      it->second = ring_.sub(it->second, c);
    }
    TopSeries img = apply_boundary(corrections, cutoff);
    for (auto& [k, c] : img) {
      auto it = omega.find(k);
      if (it == omega.end())
        omega.emplace(k, ring_.neg(c));
      else
        it->second = ring_.sub(it->second, c);
    }
#ifdef CIZETA_DWORK_DEBUG
    for (const auto& [e, terms] : groups) {
      for (const auto* kv : terms) {
        auto it = omega.find(kv->first);
        if (it == omega.end()) continue;
        if (!ring_.is_zero(it->second) &&
            level_of(it->first, it->second) <= lmin) {
          std::string msg = "layer not cancelled at weight " +
                            std::to_string(e) + " key u=";
          for (auto x : it->first.u) msg += std::to_string(x) + ",";
          msg += " v=";
          for (auto x : it->first.v) msg += std::to_string(x) + ",";
          msg += " ord_before=" + std::to_string(ring_.ord_lambda(kv->second)) +
                 " ord_after=" + std::to_string(ring_.ord_lambda(it->second));
          throw NoConvergence(msg);
        }
      }
    }
#endif
    res.iterations = iter + 1;
  }

  for (long s = 0; s < shift; ++s)
    for (auto& c : res.coords) c = div_lambda(c);
  res.shift = shift;
  res.certified_level = stop_level_ - mpq_class(shift - 1, (long)p - 1);
  res.certified_level.canonicalize();
  return res;
}

FrobeniusMatrix DworkEngine::frobenius_matrix() const {
  FrobeniusMatrix fm;
  fm.basis_e = basis_e_;
  fm.basis_keys = basis_keys_;
  const size_t D = basis_keys_.size();
  fm.raw.assign(D, std::vector<PVec>(D, ring_.zero()));
  long emax = 0;
  for (long e : basis_e_) emax = std::max(emax, e);
  mpq_class stopc = stop_level_;
  for (size_t j = 0; j < D; ++j) {
    ReduceResult red = reduce_to_basis(frobenius_on_form(basis_keys_[j]));
    if (red.certified_level < stopc) stopc = red.certified_level;
    bool any = false;
    mpq_class best;
    for (size_t i = 0; i < D; ++i) {
      fm.raw[i][j] = red.coords[i];
      long o = ring_.ord_lambda(red.coords[i]);
      if (o == PadicCtx::kOrdInf) continue;
      mpq_class val = mpq_class(o, ring_.p() - 1) + b_ * (basis_e_[j] - basis_e_[i]);
      val.canonicalize();
      if (!any || val < best) best = val;
      any = true;
    }
    if (any) {
      fm.column_min_valuation.push_back(best);
      fm.column_min_capped.push_back(false);
    } else {
      mpq_class capped = red.certified_level + b_ * (basis_e_[j] - emax);
      capped.canonicalize();
      fm.column_min_valuation.push_back(capped);
      fm.column_min_capped.push_back(true);
    }
  }
  // Entry errors sit at level >= stop; after un-normalizing by the weight
  // offsets the worst case loses b (emax - emin) digits.
  long emin = emax;
  for (long e : basis_e_) emin = std::min(emin, e);
  mpq_class cert = stopc - b_ * (emax - emin);
  cert.canonicalize();
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), cert.get_num_mpz_t(), cert.get_den_mpz_t());
  long cd = mpz_get_si(f.get_mpz_t());
  fm.certified_digits = (int)std::min<long>(cd, ring_.nwork() - 2);
  return fm;
}

std::vector<PVec> det_one_minus_t(const PadicCtx& ctx,
                                  const std::vector<std::vector<PVec>>& m) {
  const size_t D = m.size();
  // Samuelson-Berkowitz: iteratively convolve Toeplitz columns; V holds the
  // characteristic polynomial of the leading minor, leading coefficient
  // first, which is exactly det(I - tM) in ascending t-order.
  std::vector<PVec> V = {ctx.one()};
  for (size_t k = 0; k < D; ++k) {
    // Toeplitz column for the (k+1) x (k+1) principal minor.
    std::vector<PVec> T(k + 2, ctx.zero());
    T[0] = ctx.one();
    T[1] = ctx.neg(m[k][k]);
    if (k > 0) {
      std::vector<PVec> w(k);  // M^i C, C the column above the corner
      for (size_t i = 0; i < k; ++i) w[i] = m[i][k];
      for (size_t d = 2; d <= k + 1; ++d) {
        PVec q = ctx.zero();
        for (size_t i = 0; i < k; ++i) q = ctx.add(q, ctx.mul(m[k][i], w[i]));
        T[d] = ctx.neg(q);
        if (d <= k) {
          std::vector<PVec> nw(k, ctx.zero());
          for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
              nw[i] = ctx.add(nw[i], ctx.mul(m[i][j], w[j]));
          w = std::move(nw);
        }
      }
    }
    std::vector<PVec> nv(V.size() + 1, ctx.zero());
    for (size_t i = 0; i < V.size(); ++i)
      for (size_t d = 0; d < T.size() && i + d < nv.size(); ++d)
        nv[i + d] = ctx.add(nv[i + d], ctx.mul(T[d], V[i]));
    V = std::move(nv);
  }
  return V;
}

NewtonBoundResult newton_bound_check(const DworkEngine& eng,
                                     const FrobeniusMatrix& fm,
                                     const std::vector<long>& h) {
  const PadicCtx& ctx = eng.ring();
  const unsigned p = ctx.p();
  NewtonBoundResult out;
  out.det_coeffs = det_one_minus_t(ctx, fm.raw);
  const int cert = fm.certified_digits;
  uint64_t pcert = 1;
  for (int i = 0; i < cert; ++i) pcert *= p;

  std::vector<std::pair<mpq_class, mpq_class>> pts;
  for (size_t k = 0; k < out.det_coeffs.size(); ++k) {
    const PVec& c = out.det_coeffs[k];
    for (unsigned i = 1; i < ctx.dim(); ++i)
      if (c[i] % pcert != 0)
        throw Error("determinant coefficient not rational to precision");
    uint64_t c0 = c[0] % ctx.modulus();
    if (c0 % pcert == 0) {
      if (k + 1 == out.det_coeffs.size())
        throw PrecisionInsufficient("top determinant coefficient below precision");
      continue;  // certified only as ord >= cert; never on the lower hull
    }
    int o = 0;
    uint64_t t = c0;
    while (t % p == 0) {
      t /= p;
      ++o;
    }
    if (o >= cert)
      throw PrecisionInsufficient("coefficient valuation reaches certification");
    pts.emplace_back(mpq_class((unsigned long)k), mpq_class(o));
  }
  out.newton = lower_hull(std::move(pts));

  auto bound_poly = [&](bool pre_limit) {
    Polygon poly;
    mpq_class x = 0, y = 0;
    poly.vertices.emplace_back(x, y);
    for (long e = 0; e < (long)h.size(); ++e) {
      if (h[(size_t)e] == 0) continue;
      mpq_class slope = pre_limit
                            ? mpq_class(eng.b() * e * (long)(p - 1) / (long)p)
                            : mpq_class(e);
      slope.canonicalize();
      x += h[(size_t)e];
      y += slope * h[(size_t)e];
      poly.vertices.emplace_back(x, y);
    }
    return poly;
  };
  out.pre_limit = lies_on_or_above(out.newton, bound_poly(true)).verdict;
  out.limit = lies_on_or_above(out.newton, bound_poly(false)).verdict;
  return out;
}

}  // namespace cizeta
