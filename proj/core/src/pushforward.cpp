#include <random>

#include "projdyn/dynamics.hpp"
#include "projdyn/error.hpp"
#include "projdyn/parallel.hpp"
#include "upoly_modp.hpp"

namespace projdyn {

namespace {

Polynomial lift(const Polynomial& p, std::size_t nvars) {
  if (p.num_vars() == nvars) return p;
  std::vector<std::size_t> target(p.num_vars());
  for (std::size_t v = 0; v < target.size(); ++v) target[v] = v;
  return remap_variables(p, nvars, target);
}

// Reduction of a polynomial's coefficients modulo a word-size prime.
class ModularImage {
 public:
  ModularImage(const Polynomial& p, std::uint64_t prime) : prime_(prime) {
    for (const auto& t : p.terms()) {
      std::uint64_t c;
      if (p.field().is_prime_field()) {
        c = t.coeff.residue();
      } else {
        auto r = reduce_rational(t.coeff.rational(), prime);
        if (!r) {
          ok_ = false;
          return;
        }
        c = *r;
      }
      terms_.push_back({t.monomial, c});
    }
  }
  bool ok() const { return ok_; }

  std::uint64_t eval(const std::vector<std::uint64_t>& x) const {
    std::uint64_t acc = 0;
    for (const auto& [m, c] : terms_) acc = add_mod(acc, mul_mod(c, monomial_value(m, x), prime_), prime_);
    return acc;
  }

  // Univariate image in variable `var`, every other variable set from x.
  detail::UPoly univariate(const std::vector<std::uint64_t>& x, std::size_t var) const {
    detail::UPoly u;
    for (const auto& [m, c] : terms_) {
      Monomial rest = m;
      rest.set(var, 0);
      const std::size_t e = m[var];
      if (u.c.size() <= e) u.c.resize(e + 1, 0);
      u.c[e] = add_mod(u.c[e], mul_mod(c, monomial_value(rest, x), prime_), prime_);
    }
    u.trim();
    return u;
  }

 private:
  std::uint64_t monomial_value(const Monomial& m, const std::vector<std::uint64_t>& x) const {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (m[i]) v = mul_mod(v, pow_mod(x[i], m[i], prime_), prime_);
    }
    return v;
  }

  std::uint64_t prime_;
  bool ok_ = true;
  std::vector<std::pair<Monomial, std::uint64_t>> terms_;
};

// Checks that images of sampled F_P points of V(phi) are zeros of image.
unsigned certify_image(const std::vector<Polynomial>& f, const Polynomial& phi, const Polynomial& image,
                       const PushforwardOptions& options) {
  if (options.certify_samples == 0) return 0;
  const std::size_t k = f.size();
  const std::size_t nv = phi.num_vars();
  const Field field = phi.field();
  std::uint64_t prime = field.is_prime_field() ? field.characteristic() : 0;
  for (std::size_t index = 2; prime == 0; ++index) {
    const std::uint64_t q = modular_prime(index);
    bool ok = ModularImage(phi, q).ok() && ModularImage(image, q).ok();
    for (const auto& fi : f) ok = ok && ModularImage(fi, q).ok();
    if (ok) prime = q;
  }
  const ModularImage phi_mod(phi, prime), image_mod(image, prime);
  std::vector<ModularImage> f_mod;
  for (const auto& fi : f) f_mod.emplace_back(fi, prime);

  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  unsigned checked = 0;
  const unsigned attempts = 50 * options.certify_samples;
  for (unsigned attempt = 0; attempt < attempts && checked < options.certify_samples; ++attempt) {
    std::vector<std::uint64_t> x(nv, 0);
    for (std::size_t v = 0; v < nv; ++v) x[v] = rng() % prime;
    // Solve phi = 0 for the last coordinate.
    const std::size_t last = k - 1;
    auto u = phi_mod.univariate(x, last);
    if (u.is_zero()) {
      // phi vanishes for every value of the last coordinate; keep the random one.
    } else if (u.degree() == 0) {
      continue;
    } else {
      auto roots = detail::upoly_roots(u, prime, rng());
      if (roots.empty()) continue;
      x[last] = roots[rng() % roots.size()];
    }
    std::vector<std::uint64_t> y = x;
    bool all_zero = true;
    for (std::size_t i = 0; i < k; ++i) {
      y[i] = f_mod[i].eval(x);
      all_zero = all_zero && y[i] == 0;
    }
    if (all_zero) continue;
    if (image_mod.eval(y) != 0) {
      throw DegeneracyError("pushforward-certification-failed",
                            "a sampled image point is not a zero of the computed pushforward");
    }
    ++checked;
  }
  return checked;
}

}  // namespace

PushforwardResult pushforward_full(const Endomorphism& f, const HypersurfaceForm& phi,
                                   const PushforwardOptions& options) {
  const std::size_t n = f.n();
  const std::size_t k = n + 1;
  if (phi.num_form_vars() != k) throw InvalidInput("hypersurface and map live in different projective spaces");
  if (phi.form().field() != f.field()) throw RingMismatch("hypersurface and map live over different fields");
  if (!f.is_morphism()) throw NotMorphism("pushforward needs a morphism; the resultant of the map vanishes");
  const std::size_t nv = std::max(f.num_vars(), phi.form().num_vars());
  const std::size_t ne = nv + k;  // elimination ring: x, parameters, then y
  if (ne > kMaxVariables) throw Unsupported("pushforward needs more than " + std::to_string(kMaxVariables) + " variables");
  const Field field = f.field();

  std::vector<Polynomial> fe;
  for (const auto& fi : f.forms()) fe.push_back(lift(fi, ne));
  const Polynomial phie = lift(phi.form(), ne);
  auto y = [&](std::size_t i) { return Polynomial::variable(ne, field, nv + i); };

  std::vector<std::size_t> back(ne);
  for (std::size_t v = 0; v < nv; ++v) back[v] = v;
  for (std::size_t i = 0; i < k; ++i) back[nv + i] = i;

  ResultantStrategy strategy = options.strategy;
  if (strategy.homogeneous_groups.empty()) {
    std::vector<std::size_t> ys, params;
    for (std::size_t i = 0; i < k; ++i) ys.push_back(nv + i);
    for (std::size_t v = k; v < nv; ++v) params.push_back(v);
    strategy.homogeneous_groups = {ys, params};
  }

  Polynomial raw;
  if (n == 1) {
    Polynomial r = sylvester_resultant(phie, y(1) * fe[0] - y(0) * fe[1]);
    if (r.is_zero()) throw DegeneracyError("zero-elimination", "the elimination resultant vanishes identically");
    raw = normalized(remap_variables(r, nv, back));
  } else {
    // Res_x(phi, y_j f_l - y_l f_j : l != j) = y_j^a * image^e. Two base
    // indices with nonzero output pin down image^e.
    std::vector<Polynomial> outputs;
    for (std::size_t j = 0; j < k && outputs.size() < 2; ++j) {
      std::vector<Polynomial> system{phie};
      for (std::size_t l = 0; l < k; ++l) {
        if (l != j) system.push_back(y(j) * fe[l] - y(l) * fe[j]);
      }
      bool zero_form = false;
      for (const auto& s : system) zero_form = zero_form || s.is_zero();
      if (zero_form) continue;
      Polynomial r = macaulay_resultant(MacaulaySystem(std::move(system)), strategy).value;
      if (!r.is_zero()) outputs.push_back(remap_variables(r, nv, back));
    }
    if (outputs.size() < 2) {
      throw DegeneracyError("zero-elimination", "the elimination resultant vanishes identically for all but " +
                                                    std::to_string(outputs.size()) + " base coordinates");
    }
    raw = gcd(outputs[0], outputs[1]);
  }

  PushforwardResult result;
  const Polynomial reduced = squarefree_part(raw);
  result.raw = raw;
  result.multiplicity_dropped = reduced != raw;
  result.form = HypersurfaceForm(reduced, k);

  std::vector<Polynomial> fl;
  for (const auto& fi : f.forms()) fl.push_back(lift(fi, nv));
  result.samples_checked = certify_image(fl, lift(phi.form(), nv), reduced, options);
  return result;
}

HypersurfaceForm pushforward(const Endomorphism& f, const HypersurfaceForm& phi, const PushforwardOptions& options) {
  return pushforward_full(f, phi, options).form;
}

// ---------------------------------------------------------------------------

IndexTuple::IndexTuple(std::vector<unsigned> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) throw InvalidInput("index tuple is empty");
  for (std::size_t i = 1; i < indices_.size(); ++i) {
    if (indices_[i] <= indices_[i - 1]) throw InvalidInput("index tuple must be strictly increasing");
  }
}

std::string to_string(const IndexTuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(t[i]);
  }
  return s + ")";
}

PushforwardChain::PushforwardChain(Endomorphism f, HypersurfaceForm phi, PushforwardOptions options)
    : f_(std::move(f)), options_(std::move(options)) {
  const std::size_t nv = std::max(f_.num_vars(), phi.form().num_vars());
  images_.emplace_back(lift(phi.form(), nv), phi.num_form_vars());
}

const HypersurfaceForm& PushforwardChain::at(unsigned i) {
  while (images_.size() <= i) images_.push_back(pushforward(f_, images_.back(), options_));
  return images_[i];
}

ResultantResult improper_certificate(PushforwardChain& chain, const IndexTuple& indices,
                                     const ResultantStrategy& strategy) {
  if (indices.size() != chain.map().n() + 1) {
    throw InvalidInput("certificate needs n + 1 = " + std::to_string(chain.map().n() + 1) + " indices");
  }
  std::vector<Polynomial> forms;
  for (unsigned i : indices.indices()) forms.push_back(chain.at(i).form());
  return macaulay_resultant(MacaulaySystem(std::move(forms)), strategy);
}

ResultantResult improper_certificate(const Endomorphism& f, const HypersurfaceForm& phi, const IndexTuple& indices,
                                     const ResultantStrategy& strategy) {
  PushforwardChain chain(f, phi);
  return improper_certificate(chain, indices, strategy);
}

WitnessSearch search_improper_witness(const Endomorphism& f, const HypersurfaceForm& phi, unsigned bound) {
  const std::size_t k = f.n() + 1;
  WitnessSearch out;
  out.bound = bound;
  if (bound + 1 < k) return out;

  // All strictly increasing tuples with entries <= bound, in lexicographic order.
  std::vector<IndexTuple> tuples;
  std::vector<unsigned> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = unsigned(i);
  while (true) {
    tuples.emplace_back(cur);
    std::size_t i = k;
    while (i-- > 0 && cur[i] == bound - (k - 1 - i)) {
    }
    if (i == std::size_t(-1)) break;
    ++cur[i];
    for (std::size_t j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }

  PushforwardChain chain(f, phi);
  chain.at(bound);
  std::vector<char> vanishes(tuples.size(), 0);
  parallel_for(tuples.size(), [&](std::size_t t) {
    vanishes[t] = improper_certificate(chain, tuples[t]).value.is_zero();
  });
  out.tuples_checked = tuples.size();
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    if (vanishes[t]) {
      out.witness = tuples[t];
      break;
    }
  }
  return out;
}

}  // namespace projdyn
