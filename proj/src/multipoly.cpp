#include "pswaring/multipoly.hpp"

#include <algorithm>
#include <map>

namespace pswaring {

std::vector<std::vector<int>> exponents_of_degree(int nvars, int deg) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(nvars, 0);
  // Depth-first over positions; then sort descending to pin the order.
  auto rec = [&](auto&& self, int pos, int rest) -> void {
    if (pos == nvars - 1) {
      cur[pos] = rest;
      out.push_back(cur);
      return;
    }
    for (int e = rest; e >= 0; --e) {
      cur[pos] = e;
      self(self, pos + 1, rest - e);
    }
  };
  rec(rec, 0, deg);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

MonomialBasis::MonomialBasis(Format fmt) : fmt_(std::move(fmt)) {
  const int n = fmt_.factors();
  monos_.resize(n);
  for (int i = 0; i < n; ++i) monos_[i] = exponents_of_degree(fmt_.r(i) + 1, fmt_.d(i));
  strides_.assign(n, 1);
  for (int i = n - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * int(monos_[i + 1].size());
  size_ = strides_[0] * int(monos_[0].size());
  if (size_ != fmt_.ncoeff()) throw std::logic_error("MonomialBasis: size mismatch");
}

void MonomialBasis::split(int global, std::span<int> per_factor) const {
  for (int i = 0; i < factors(); ++i) {
    per_factor[i] = global / strides_[i];
    global %= strides_[i];
  }
}

int MonomialBasis::join(std::span<const int> per_factor) const {
  int g = 0;
  for (int i = 0; i < factors(); ++i) g += per_factor[i] * strides_[i];
  return g;
}

namespace {

template <class Field>
typename Field::Scalar power(const Field& f, const typename Field::Scalar& base, int e) {
  auto r = f.one();
  for (int i = 0; i < e; ++i) r = f.mul(r, base);
  return r;
}

// Value of one factor monomial at homogeneous coordinates hom.
template <class Field>
typename Field::Scalar mono_value(const Field& f, const std::vector<int>& e,
                                  const std::vector<typename Field::Scalar>& hom) {
  auto v = f.one();
  for (std::size_t j = 0; j < e.size(); ++j)
    if (e[j] > 0) v = f.mul(v, power(f, hom[j], e[j]));
  return v;
}

// Product over factors of the chosen per-factor table entries, global order.
template <class Field>
std::vector<typename Field::Scalar> kron_product(
    const Field& f, const MonomialBasis& basis,
    const std::vector<const std::vector<typename Field::Scalar>*>& tables) {
  const int n = basis.factors();
  const int N = basis.size();
  std::vector<typename Field::Scalar> out(N, f.zero());
  std::vector<int> idx(n, 0);
  for (int g = 0; g < N; ++g) {
    auto v = f.one();
    for (int i = 0; i < n; ++i) v = f.mul(v, (*tables[i])[idx[i]]);
    out[g] = v;
    for (int i = n - 1; i >= 0; --i) {
      if (++idx[i] < basis.factor_size(i)) break;
      idx[i] = 0;
    }
  }
  return out;
}

template <class Field>
std::vector<typename Field::Scalar> homogeneous(const Field& f,
                                                const std::vector<typename Field::Scalar>& affine) {
  std::vector<typename Field::Scalar> hom = affine;
  hom.push_back(f.one());
  return hom;
}

}  // namespace

template <class Field>
FactorTables<Field> factor_tables(const Field& f, const MonomialBasis& basis,
                                  const Point<typename Field::Scalar>& pt,
                                  bool with_derivatives) {
  const int n = basis.factors();
  if (int(pt.size()) != n) throw std::invalid_argument("factor_tables: point/format mismatch");
  FactorTables<Field> t;
  t.val.resize(n);
  t.dval.resize(n);
  for (int i = 0; i < n; ++i) {
    const int r = basis.format().r(i);
    if (int(pt[i].size()) != r) throw std::invalid_argument("factor_tables: bad point arity");
    const auto hom = homogeneous(f, pt[i]);
    const int fs = basis.factor_size(i);
    t.val[i].resize(fs);
    for (int m = 0; m < fs; ++m) t.val[i][m] = mono_value(f, basis.exponent(i, m), hom);
    if (!with_derivatives) continue;
    t.dval[i].assign(r, std::vector<typename Field::Scalar>(fs, f.zero()));
    for (int j = 0; j < r; ++j) {
      for (int m = 0; m < fs; ++m) {
        std::vector<int> e = basis.exponent(i, m);
        if (e[j] == 0) continue;
        const int mult = e[j];
        e[j] -= 1;
        t.dval[i][j][m] = f.mul(f.from_int(mult), mono_value(f, e, hom));
      }
    }
  }
  return t;
}

template <class Field>
std::vector<typename Field::Scalar> eval_monomial_row(const Field& f, const MonomialBasis& basis,
                                                      const Point<typename Field::Scalar>& pt) {
  const auto t = factor_tables(f, basis, pt, false);
  std::vector<const std::vector<typename Field::Scalar>*> tables;
  for (int i = 0; i < basis.factors(); ++i) tables.push_back(&t.val[i]);
  return kron_product(f, basis, tables);
}

template <class Field>
std::vector<std::vector<typename Field::Scalar>> eval_partial_rows(
    const Field& f, const MonomialBasis& basis, const Point<typename Field::Scalar>& pt) {
  const auto t = factor_tables(f, basis, pt, true);
  std::vector<std::vector<typename Field::Scalar>> rows;
  for (int i = 0; i < basis.factors(); ++i) {
    for (int j = 0; j < basis.format().r(i); ++j) {
      std::vector<const std::vector<typename Field::Scalar>*> tables;
      for (int ii = 0; ii < basis.factors(); ++ii)
        tables.push_back(ii == i ? &t.dval[i][j] : &t.val[ii]);
      rows.push_back(kron_product(f, basis, tables));
    }
  }
  return rows;
}

template <class Field>
std::vector<typename Field::Scalar> expand_rank_one(
    const Field& f, const MonomialBasis& basis, const typename Field::Scalar& scalar,
    const std::vector<std::vector<typename Field::Scalar>>& linforms) {
  const int n = basis.factors();
  if (int(linforms.size()) != n) throw std::invalid_argument("expand_rank_one: wrong arity");
  std::vector<std::vector<typename Field::Scalar>> w(n);
  for (int i = 0; i < n; ++i) {
    if (int(linforms[i].size()) != basis.format().r(i) + 1)
      throw std::invalid_argument("expand_rank_one: linform length mismatch");
    const int fs = basis.factor_size(i);
    w[i].resize(fs);
    for (int m = 0; m < fs; ++m) {
      const auto& e = basis.exponent(i, m);
      auto v = f.from_bigint(multinomial(basis.format().d(i), e));
      for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j] > 0) v = f.mul(v, power(f, linforms[i][j], e[j]));
      w[i][m] = v;
    }
  }
  std::vector<const std::vector<typename Field::Scalar>*> tables;
  for (int i = 0; i < n; ++i) tables.push_back(&w[i]);
  auto out = kron_product(f, basis, tables);
  for (auto& c : out) c = f.mul(c, scalar);
  return out;
}

template <>
Point<std::uint32_t> random_point(const FpField& f, const Format& fmt, Rng& rng) {
  Point<std::uint32_t> pt(fmt.factors());
  for (int i = 0; i < fmt.factors(); ++i) {
    pt[i].resize(fmt.r(i));
    for (auto& c : pt[i]) c = rng.field_nonzero(f.prime());
  }
  return pt;
}

template <>
PointC random_point(const ComplexField&, const Format& fmt, Rng& rng) {
  PointC pt(fmt.factors());
  for (int i = 0; i < fmt.factors(); ++i) {
    pt[i].resize(fmt.r(i));
    for (auto& c : pt[i]) c = rng.unit_disc();
  }
  return pt;
}

template <>
Point<BigRat> random_point(const RationalField&, const Format& fmt, Rng& rng) {
  Point<BigRat> pt(fmt.factors());
  for (int i = 0; i < fmt.factors(); ++i) {
    pt[i].resize(fmt.r(i));
    for (auto& c : pt[i]) c = BigRat(static_cast<long long>(rng.below(97) + 1));
  }
  return pt;
}

Cplx eval_section(const SectionC& s, const MonomialBasis& basis, const PointC& pt) {
  ComplexField f;
  const auto row = eval_monomial_row(f, basis, pt);
  Cplx acc = 0;
  for (int g = 0; g < basis.size(); ++g) acc += row[g] * s.coeffs[g];
  return acc;
}

Eigen::VectorXcd eval_gradient(const SectionC& s, const MonomialBasis& basis, const PointC& pt) {
  ComplexField f;
  const auto rows = eval_partial_rows(f, basis, pt);
  Eigen::VectorXcd g(int(rows.size()));
  for (std::size_t v = 0; v < rows.size(); ++v) {
    Cplx acc = 0;
    for (int i = 0; i < basis.size(); ++i) acc += rows[v][i] * s.coeffs[i];
    g[int(v)] = acc;
  }
  return g;
}

Eigen::MatrixXcd hessian_at(const SectionC& s, const MonomialBasis& basis, const PointC& pt) {
  ComplexField f;
  const int n = basis.factors();
  const auto t = factor_tables(f, basis, pt, true);

  // Second derivative table of one factor for a coordinate pair (j, j2).
  auto d2table = [&](int i, int j, int j2) {
    const int fs = basis.factor_size(i);
    std::vector<Cplx> out(fs, Cplx(0, 0));
    const auto hom = [&] {
      std::vector<Cplx> h = pt[i];
      h.push_back(Cplx(1, 0));
      return h;
    }();
    for (int m = 0; m < fs; ++m) {
      std::vector<int> e = basis.exponent(i, m);
      const long long mult = (long long)e[j] * (e[j2] - (j == j2 ? 1 : 0));
      if (mult <= 0) continue;
      e[j] -= 1;
      e[j2] -= 1;
      out[m] = double(mult) * mono_value(f, e, hom);
    }
    return out;
  };

  // Affine variable index map: (factor, coord) -> flat.
  std::vector<std::pair<int, int>> vars;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < basis.format().r(i); ++j) vars.emplace_back(i, j);

  const int m = int(vars.size());
  Eigen::MatrixXcd H(m, m);
  for (int u = 0; u < m; ++u) {
    for (int v = u; v < m; ++v) {
      const auto [iu, ju] = vars[u];
      const auto [iv, jv] = vars[v];
      std::vector<Cplx> own;
      std::vector<const std::vector<Cplx>*> tables(n);
      if (iu == iv) {
        own = d2table(iu, ju, jv);
        for (int i = 0; i < n; ++i) tables[i] = (i == iu) ? &own : &t.val[i];
      } else {
        for (int i = 0; i < n; ++i) {
          if (i == iu)
            tables[i] = &t.dval[iu][ju];
          else if (i == iv)
            tables[i] = &t.dval[iv][jv];
          else
            tables[i] = &t.val[i];
        }
      }
      const auto row = kron_product(f, basis, tables);
      Cplx acc = 0;
      for (int g = 0; g < basis.size(); ++g) acc += row[g] * s.coeffs[g];
      H(u, v) = acc;
      H(v, u) = acc;
    }
  }
  return H;
}

SectionC substitute(const SectionC& s, const std::vector<Eigen::MatrixXcd>& factor_maps) {
  const MonomialBasis basis(s.format);
  const int n = basis.factors();
  if (int(factor_maps.size()) != n) throw std::invalid_argument("substitute: one map per factor");

  Eigen::VectorXcd cur = s.coeffs;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) {
    const int r = s.format.r(i);
    const int d = s.format.d(i);
    const auto& U = factor_maps[i];
    if (U.rows() != r + 1 || U.cols() != r + 1)
      throw std::invalid_argument("substitute: map size mismatch");

    // Phi[mprime][m] = coefficient of basis monomial mprime in mono_m(U x).
    const auto monos = exponents_of_degree(r + 1, d);
    // Exponent -> index per intermediate degree.
    std::vector<std::map<std::vector<int>, int>> level_index(d + 1);
    std::vector<std::vector<std::vector<int>>> level_monos(d + 1);
    for (int g = 0; g <= d; ++g) {
      level_monos[g] = exponents_of_degree(r + 1, g);
      for (std::size_t m = 0; m < level_monos[g].size(); ++m)
        level_index[g][level_monos[g][m]] = int(m);
    }

    const int fs = int(monos.size());
    Eigen::MatrixXcd Phi = Eigen::MatrixXcd::Zero(fs, fs);
    for (int m = 0; m < fs; ++m) {
      // Expand prod_j (row_j(U) . x)^{e_j} by repeated linear multiplication.
      std::vector<Cplx> poly{Cplx(1, 0)};
      int deg = 0;
      for (int j = 0; j <= r; ++j) {
        for (int rep = 0; rep < monos[m][j]; ++rep) {
          std::vector<Cplx> next(level_monos[deg + 1].size(), Cplx(0, 0));
          for (std::size_t q = 0; q < level_monos[deg].size(); ++q) {
            if (poly[q] == Cplx(0, 0)) continue;
            for (int t2 = 0; t2 <= r; ++t2) {
              if (U(j, t2) == Cplx(0, 0)) continue;
              std::vector<int> e = level_monos[deg][q];
              e[t2] += 1;
              next[level_index[deg + 1][e]] += poly[q] * U(j, t2);
            }
          }
          poly = std::move(next);
          ++deg;
        }
      }
      for (int mp = 0; mp < fs; ++mp) Phi(mp, m) = poly[mp];
    }

    // Mode-i product: out[.., mprime, ..] = sum_m Phi[mprime][m] cur[.., m, ..].
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(basis.size());
    for (int g = 0; g < basis.size(); ++g) {
      if (cur[g] == Cplx(0, 0)) continue;
      basis.split(g, idx);
      const int mi = idx[i];
      for (int mp = 0; mp < fs; ++mp) {
        if (Phi(mp, mi) == Cplx(0, 0)) continue;
        idx[i] = mp;
        next[basis.join(idx)] += Phi(mp, mi) * cur[g];
      }
      idx[i] = mi;
    }
    cur = std::move(next);
  }
  return SectionC{s.format, std::move(cur)};
}

// Explicit instantiations for the scalar kinds in use.
template FactorTables<FpField> factor_tables(const FpField&, const MonomialBasis&,
                                             const Point<std::uint32_t>&, bool);
template FactorTables<ComplexField> factor_tables(const ComplexField&, const MonomialBasis&,
                                                  const PointC&, bool);
template FactorTables<RationalField> factor_tables(const RationalField&, const MonomialBasis&,
                                                   const Point<BigRat>&, bool);

template std::vector<std::uint32_t> eval_monomial_row(const FpField&, const MonomialBasis&,
                                                      const Point<std::uint32_t>&);
template std::vector<Cplx> eval_monomial_row(const ComplexField&, const MonomialBasis&,
                                             const PointC&);
template std::vector<BigRat> eval_monomial_row(const RationalField&, const MonomialBasis&,
                                               const Point<BigRat>&);

template std::vector<std::vector<std::uint32_t>> eval_partial_rows(const FpField&,
                                                                   const MonomialBasis&,
                                                                   const Point<std::uint32_t>&);
template std::vector<std::vector<Cplx>> eval_partial_rows(const ComplexField&,
                                                          const MonomialBasis&, const PointC&);
template std::vector<std::vector<BigRat>> eval_partial_rows(const RationalField&,
                                                            const MonomialBasis&,
                                                            const Point<BigRat>&);

template std::vector<std::uint32_t> expand_rank_one(const FpField&, const MonomialBasis&,
                                                    const std::uint32_t&,
                                                    const std::vector<std::vector<std::uint32_t>>&);
template std::vector<Cplx> expand_rank_one(const ComplexField&, const MonomialBasis&, const Cplx&,
                                           const std::vector<std::vector<Cplx>>&);

}  // namespace pswaring
