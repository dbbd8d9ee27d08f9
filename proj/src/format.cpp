#include "pswaring/format.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pswaring {

Format::Format(std::vector<int> r, std::vector<int> d) : r_(std::move(r)), d_(std::move(d)) {
  if (r_.empty() || r_.size() != d_.size())
    throw std::invalid_argument("Format: r and d must be nonempty and of equal length");
  for (int v : r_)
    if (v < 1) throw std::invalid_argument("Format: factor dimensions must be >= 1");
  for (int v : d_)
    if (v < 0) throw std::invalid_argument("Format: degrees must be >= 0");

  orig_of_pos_.resize(r_.size());
  std::iota(orig_of_pos_.begin(), orig_of_pos_.end(), 0);
  if (all_r_equal()) {
    std::stable_sort(orig_of_pos_.begin(), orig_of_pos_.end(),
                     [&](int a, int b) { return d_[a] < d_[b]; });
    std::vector<int> nd(d_.size());
    for (std::size_t i = 0; i < d_.size(); ++i) nd[i] = d_[orig_of_pos_[i]];
    d_ = std::move(nd);
  }
  sum_r_ = std::accumulate(r_.begin(), r_.end(), 0);

  if (ncoeff_big() < 2) throw std::invalid_argument("Format: ncoeff must be >= 2");
}

bool Format::all_r_equal() const {
  return std::all_of(r_.begin(), r_.end(), [&](int v) { return v == r_[0]; });
}

int Format::position_of(int orig) const {
  for (std::size_t i = 0; i < orig_of_pos_.size(); ++i)
    if (orig_of_pos_[i] == orig) return int(i);
  throw std::out_of_range("Format::position_of");
}

Format Format::with_degree_at(int factor, int new_degree) const {
  std::vector<int> nd = d_;
  nd.at(factor) = new_degree;
  // The child re-normalizes; callers recover the moved factor via
  // child.position_of(factor).
  return Format(r_, nd);
}

Format Format::without_factor(int factor) const {
  std::vector<int> nr = r_, nd = d_;
  nr.erase(nr.begin() + factor);
  nd.erase(nd.begin() + factor);
  return Format(std::move(nr), std::move(nd));
}

BigInt Format::ncoeff_big() const { return pswaring::ncoeff(*this); }

int Format::ncoeff() const {
  const BigInt n = ncoeff_big();
  if (n > 10'000'000) throw std::overflow_error("Format: ncoeff too large for dense linear algebra");
  return n.convert_to<int>();
}

static std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size()) throw std::invalid_argument("Format: bad integer '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("Format: empty integer list");
  return out;
}

Format Format::parse(const std::string& spec) {
  // Grammar: r=<comma ints>;d=<comma ints>
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const auto semi = s.find(';');
  if (semi == std::string::npos || s.rfind("r=", 0) != 0 || s.compare(semi + 1, 2, "d="))
    throw std::invalid_argument("Format: expected \"r=<ints>;d=<ints>\", got \"" + spec + "\"");
  std::vector<int> r = parse_int_list(s.substr(2, semi - 2));
  std::vector<int> d = parse_int_list(s.substr(semi + 3));
  for (int v : d)
    if (v < 1) throw std::invalid_argument("Format: degrees must be >= 1");
  return Format(std::move(r), std::move(d));
}

std::string Format::to_string() const {
  std::string out = "r=";
  for (std::size_t i = 0; i < r_.size(); ++i) out += (i ? "," : "") + std::to_string(r_[i]);
  out += ";d=";
  for (std::size_t i = 0; i < d_.size(); ++i) out += (i ? "," : "") + std::to_string(d_[i]);
  return out;
}

BigInt binomial(long long a, long long b) {
  if (a < 0 || b < 0) throw std::invalid_argument("binomial: negative argument");
  if (b > a) return 0;
  if (b > a - b) b = a - b;
  BigInt res = 1;
  for (long long i = 1; i <= b; ++i) {
    res *= (a - b + i);
    res /= i;
  }
  return res;
}

BigInt multinomial(int d, const std::vector<int>& parts) {
  BigInt res = 1;
  int rest = d;
  for (int p : parts) {
    res *= binomial(rest, p);
    rest -= p;
  }
  if (rest != 0) throw std::invalid_argument("multinomial: parts do not sum to degree");
  return res;
}

BigInt ncoeff(const Format& f) {
  BigInt n = 1;
  for (int i = 0; i < f.factors(); ++i) n *= binomial(f.r(i) + f.d(i), f.r(i));
  return n;
}

std::optional<long long> perfect_k(const Format& f) {
  if (!f.all_r_equal())
    throw std::invalid_argument("perfect_k: requires all factor dimensions equal");
  if (f.sum_r() < 2)
    throw std::invalid_argument("perfect_k: requires sum of factor dimensions >= 2");
  const BigInt n = ncoeff(f);
  const BigInt span = f.sum_r() + 1;
  if (n % span != 0) return std::nullopt;
  const BigInt kp1 = n / span;
  if (kp1 < 2) return std::nullopt;
  if (kp1 > BigInt(std::numeric_limits<long long>::max()))
    throw std::overflow_error("perfect_k: k does not fit a 64-bit integer");
  return (kp1 - 1).convert_to<long long>();
}

std::vector<PerfectCase> enumerate_corollary_two(int dmax) {
  if (dmax < 4) return {};
  std::vector<PerfectCase> out;
  for (int d1 = 4; d1 <= dmax; ++d1) {
    for (int d2 = d1; d2 <= dmax; ++d2) {
      const long long prod = (long long)(d1 + 1) * (d2 + 1);
      if (prod % 3 != 0) continue;
      const long long kp1 = prod / 3;
      if (kp1 < 2) continue;
      out.push_back({Format({1, 1}, {d1, d2}), kp1 - 1, PerfectCase::Nu::multiple});
    }
  }
  return out;
}

std::vector<PerfectCase> enumerate_corollary_three(int dmax) {
  if (dmax < 3) return {};
  std::vector<PerfectCase> out;
  for (int d1 = 3; d1 <= dmax; ++d1) {
    for (int d2 = d1; d2 <= dmax; ++d2) {
      for (int d3 = d2; d3 <= dmax; ++d3) {
        const long long prod = (long long)(d1 + 1) * (d2 + 1) * (d3 + 1);
        if (prod % 4 != 0) continue;
        const long long kp1 = prod / 4;
        if (kp1 < 2) continue;
        const long long cap = (long long)(d3 - 2) * (((long long)(d1 + 1) * (d2 + 1)) / 3);
        if (kp1 > cap) continue;
        out.push_back({Format({1, 1, 1}, {d1, d2, d3}), kp1 - 1, PerfectCase::Nu::multiple});
      }
    }
  }
  return out;
}

bool nef_check(const Format& f) {
  if (!f.all_r_equal())
    throw std::invalid_argument("nef_check: requires all factor dimensions equal");
  const long long r = f.r(0);
  const long long d1 = f.d(0);
  if (d1 == 0) throw std::invalid_argument("nef_check: zero leading degree");
  // -(r+1) + d_i/mu >= 0 with mu = d1/(r+1); cross-multiplied by d1 > 0.
  for (int i = 0; i < f.factors(); ++i) {
    if (BigInt(f.d(i)) * (r + 1) < BigInt(r + 1) * d1) return false;
  }
  return true;
}

WeaklySchedule weakly_schedule(const Format& f, long long s) {
  if (f.factors() < 2) throw std::invalid_argument("weakly_schedule: needs at least two factors");
  const int dist = f.original_last();
  if (f.r(dist) != 1)
    throw std::invalid_argument("weakly_schedule: distinguished factor must be a P^1");

  BigInt head_prod = 1;
  long long head_sum_r = 0;
  for (int i = 0; i < f.factors(); ++i) {
    if (i == dist) continue;
    head_prod *= binomial(f.r(i) + f.d(i), f.r(i));
    head_sum_r += f.r(i);
  }
  const BigInt h0_big = head_prod / (head_sum_r + 1);
  const BigInt s_max = ncoeff(f) / (head_sum_r + 2);
  if (s < 1 || BigInt(s) > s_max)
    throw std::invalid_argument("weakly_schedule: s out of the admissible range");
  const long long h0 = h0_big.convert_to<long long>();
  if (h0 < 1) throw std::invalid_argument("weakly_schedule: no valid t0 (h0 = 0)");

  WeaklySchedule ws;
  ws.s = s;
  ws.h0 = h0;
  ws.t0 = (s - 1) / h0;  // unique t0 with 1 <= s - t0 h0 <= h0
  ws.degree_ok = f.d(dist) >= ws.t0 + 3;
  return ws;
}

}  // namespace pswaring
