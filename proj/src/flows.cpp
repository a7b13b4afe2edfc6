#include "ergodlab/flows.hpp"

#include <unordered_set>

namespace ergodlab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::int64_t binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

// n^e mod 2^128. Only the residue matters once it multiplies a 128-bit fraction.
u128 wrap_pow(std::int64_t n, int e) {
  const u128 b = static_cast<u128>(static_cast<__int128>(n));
  u128 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

Frac wide_mul(Frac a, u128 m) { return Frac::from_bits(a.bits() * m); }

void check_degree(int degree) {
  if (degree < 1 || degree > kMaxWeylDegree) {
    throw DomainError("Weyl degree must lie in [1, 8]");
  }
}

void check_cocycle(const CocycleRef& c) {
  if (!c) {
    throw DomainError("cocycle flow requires lacunary parameters");
  }
}

}  // namespace

std::size_t FlowSpec::dim() const {
  return std::visit(overloaded{
                        [](const Rotation& r) { return r.delta.dim(); },
                        [](const WeylSystem& w) { return static_cast<std::size_t>(w.degree); },
                        [](const Anzai&) { return std::size_t{2}; },
                        [](const CocycleSkew&) { return std::size_t{2}; },
                        [](const SFlow&) { return std::size_t{3}; },
                        [](const Heisenberg&) { return std::size_t{3}; },
                        [](const Product& p) {
                          std::size_t d = 0;
                          for (const auto& part : p.parts) d += part.dim();
                          return d;
                        },
                    },
                    v_);
}

std::string FlowSpec::name() const {
  static const char* const names[] = {"rotation", "weyl", "anzai", "cocycle_skew", "s_flow", "heisenberg", "product"};
  return names[v_.index()];
}

TorusPoint weyl_closed_form(Frac beta, int degree, std::int64_t n) {
  check_degree(degree);
  TorusPoint out(static_cast<std::size_t>(degree));
  for (int j = 1; j <= degree; ++j) {
    out[static_cast<std::size_t>(j - 1)] = wide_mul(beta, wrap_pow(n, j));
  }
  return out;
}

TorusPoint weyl_closed_form_from(Frac beta, const TorusPoint& start, std::int64_t n) {
  const int degree = static_cast<int>(start.dim());
  check_degree(degree);
  TorusPoint out(start.dim());
  for (int j = 1; j <= degree; ++j) {
    Frac v = wide_mul(beta, wrap_pow(n, j));
    for (int i = 1; i <= j; ++i) {
      const u128 c = static_cast<u128>(binomial(j, i)) * wrap_pow(n, j - i);
      v += wide_mul(start[static_cast<std::size_t>(i - 1)], c);
    }
    out[static_cast<std::size_t>(j - 1)] = v;
  }
  return out;
}

TorusPoint weyl_affine_map(Frac beta, const TorusPoint& p) {
  const int degree = static_cast<int>(p.dim());
  check_degree(degree);
  TorusPoint out(p.dim());
  for (int j = 1; j <= degree; ++j) {
    Frac v = p[static_cast<std::size_t>(j - 1)] + beta;
    for (int i = 1; i < j; ++i) {
      v += int_mul(p[static_cast<std::size_t>(i - 1)], binomial(j, i));
    }
    out[static_cast<std::size_t>(j - 1)] = v;
  }
  return out;
}

TorusPoint anzai_closed_form(Frac alpha, std::int64_t n) {
  const __int128 tri = static_cast<__int128>(n) * (static_cast<__int128>(n) - 1) / 2;
  return TorusPoint{int_mul(alpha, n), wide_mul(alpha, static_cast<u128>(tri))};
}

OrbitState make_flow(const FlowSpec& spec, const TorusPoint& start) {
  if (start.dim() != spec.dim()) {
    throw DomainError("start point has dimension " + std::to_string(start.dim()) + ", flow '" + spec.name() +
                      "' needs " + std::to_string(spec.dim()));
  }
  OrbitState st;
  st.spec_ = std::make_shared<const FlowSpec>(spec);
  st.point_ = start;

  std::size_t offset = 0;
  auto flatten = [&](auto&& self, const FlowSpec& f) -> void {
    std::visit(overloaded{
                   [&](const Rotation& r) {
                     if (r.delta.dim() == 0) throw DomainError("rotation needs dimension >= 1");
                     st.slots_.push_back({&f, offset, 0});
                   },
                   [&](const WeylSystem& w) {
                     check_degree(w.degree);
                     st.slots_.push_back({&f, offset, st.weyl_.size()});
                     OrbitState::WeylSlot ws{offset, w.degree, st.table_.size()};
                     st.weyl_.push_back(ws);
                     TorusPoint sub(std::vector<Frac>(start.coords().begin() + static_cast<std::ptrdiff_t>(offset),
                                                      start.coords().begin() +
                                                          static_cast<std::ptrdiff_t>(offset + w.degree)));
                     std::vector<TorusPoint> early;
                     for (int m = 0; m <= w.degree; ++m) {
                       early.push_back(weyl_closed_form_from(w.beta, sub, m));
                     }
                     // coordinate j keeps differences of orders 1..j
                     for (int j = 1; j <= w.degree; ++j) {
                       for (int i = 1; i <= j; ++i) {
                         Frac d;
                         for (int m = 0; m <= i; ++m) {
                           const std::int64_t sign = ((i - m) % 2 == 0) ? 1 : -1;
                           d += int_mul(early[static_cast<std::size_t>(m)][static_cast<std::size_t>(j - 1)],
                                        sign * binomial(i, m));
                         }
                         st.table_.push_back(d);
                       }
                     }
                   },
                   [&](const Anzai&) { st.slots_.push_back({&f, offset, 0}); },
                   [&](const CocycleSkew& c) {
                     check_cocycle(c.cocycle);
                     st.slots_.push_back({&f, offset, 0});
                   },
                   [&](const SFlow& s) {
                     check_cocycle(s.cocycle);
                     st.slots_.push_back({&f, offset, 0});
                   },
                   [&](const Heisenberg& h) {
                     validate(h.params);
                     st.slots_.push_back({&f, offset, st.heis_.size()});
                     st.heis_.push_back(reduce_mod_lattice(
                         {start[offset].to_real(), start[offset + 1].to_real(), start[offset + 2].to_real()}));
                   },
                   [&](const Product& p) {
                     if (p.parts.empty()) throw DomainError("product flow needs at least one component");
                     for (const auto& part : p.parts) self(self, part);
                   },
               },
               f.variant());
    if (!std::holds_alternative<Product>(f.variant())) {
      offset += f.dim();
    }
  };
  flatten(flatten, *st.spec_);
  return st;
}

void OrbitState::advance() {
  auto& pt = point_;
  for (const Slot& slot : slots_) {
    const std::size_t o = slot.offset;
    std::visit(overloaded{
                   [&](const Rotation& r) {
                     for (std::size_t i = 0; i < r.delta.dim(); ++i) pt[o + i] += r.delta[i];
                   },
                   [&](const WeylSystem&) {
                     const WeylSlot& ws = weyl_[slot.aux];
                     Frac* tab = table_.data() + ws.table_offset;
                     for (int j = 1; j <= ws.degree; ++j) {
                       Frac& x = pt[o + static_cast<std::size_t>(j - 1)];
                       x += tab[0];
                       for (int i = 0; i + 1 < j; ++i) tab[i] += tab[i + 1];
                       tab += j;
                     }
                   },
                   [&](const Anzai& a) {
                     const Frac x = pt[o];
                     pt[o] = x + a.alpha;
                     pt[o + 1] += x;
                   },
                   [&](const CocycleSkew& c) {
                     const Frac x = pt[o];
                     pt[o] = x + c.alpha;
                     pt[o + 1] += phi_increment(x, *c.cocycle);
                   },
                   [&](const SFlow& s) {
                     const Frac x = pt[o];
                     pt[o] = x + s.alpha;
                     pt[o + 1] += phi_increment(x, *s.cocycle);
                     pt[o + 2] += x;
                   },
                   [&](const Heisenberg& h) {
                     HeisPoint& g = heis_[slot.aux];
                     g = nil_step(g, h.params);
                     pt[o] = Frac::from_real(g.x);
                     pt[o + 1] = Frac::from_real(g.y);
                     pt[o + 2] = Frac::from_real(g.z);
                   },
                   [](const Product&) {},
               },
               slot.flow->variant());
  }
  ++index_;
}

OrbitState step(OrbitState state) {
  state.advance();
  return state;
}

std::vector<TorusPoint> collect_orbit(const FlowSpec& spec, const TorusPoint& start, std::uint64_t count) {
  std::vector<TorusPoint> out;
  out.reserve(count);
  for (const auto& p : orbit(spec, start, count)) {
    out.push_back(p);
  }
  return out;
}

std::uint64_t observed_orbit_cardinality(const FlowSpec& spec, const TorusPoint& start, std::uint64_t count) {
  struct Hash {
    std::size_t operator()(const TorusPoint& p) const {
      std::size_t h = 0;
      for (Frac f : p.coords()) {
        h = h * 1000003u ^ std::hash<std::uint64_t>{}(f.hi()) ^ (std::hash<std::uint64_t>{}(f.lo()) << 1);
      }
      return h;
    }
  };
  std::unordered_set<TorusPoint, Hash> seen;
  for (const auto& p : orbit(spec, start, count)) {
    seen.insert(p);
  }
  return seen.size();
}

}  // namespace ergodlab
