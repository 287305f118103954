#include "fqzeta/field.hpp"

#include <algorithm>
#include <map>

namespace fqz {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Minimal F_p[x] arithmetic used only to verify the modulus at construction.
using PVec = std::vector<int>;  // lowest degree first, no trailing zeros

PVec ptrim(PVec a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

PVec pmulmod(const PVec& a, const PVec& b, const PVec& mod, int p) {
  if (a.empty() || b.empty()) return {};
  PVec r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<int>((r[i + j] + 1LL * a[i] * b[j]) % p);
  // reduce mod the monic modulus
  int e = static_cast<int>(mod.size()) - 1;
  for (int d = static_cast<int>(r.size()) - 1; d >= e; --d) {
    int c = r[d];
    if (c == 0) continue;
    for (int i = 0; i <= e; ++i) {
      int idx = d - e + i;
      r[idx] = static_cast<int>(((r[idx] - 1LL * c * mod[i]) % p + p) % p);
    }
  }
  r.resize(e);
  return ptrim(r);
}

PVec ppowmod(PVec base, long long n, const PVec& mod, int p) {
  PVec r = {1};
  while (n > 0) {
    if (n & 1) r = pmulmod(r, base, mod, p);
    base = pmulmod(base, base, mod, p);
    n >>= 1;
  }
  return r;
}

PVec pgcd(PVec a, PVec b, int p) {
  a = ptrim(a);
  b = ptrim(b);
  while (!b.empty()) {
    // a mod b
    int db = static_cast<int>(b.size()) - 1;
    int lb = b[db];
    int lbinv = 1;
    for (int i = 1; i < p; ++i)
      if (1LL * lb * i % p == 1) lbinv = i;
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
      int da = static_cast<int>(a.size()) - 1;
      int c = static_cast<int>(1LL * a[da] * lbinv % p);
      for (int i = 0; i <= db; ++i) {
        int idx = da - db + i;
        a[idx] = static_cast<int>(((a[idx] - 1LL * c * b[i]) % p + p) % p);
      }
      a = ptrim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

bool is_irreducible(const PVec& mod, int p) {
  int e = static_cast<int>(mod.size()) - 1;
  if (e < 1) return false;
  if (e == 1) return true;
  // Irreducible iff x^(p^e) == x mod modulus and
  // gcd(x^(p^k) - x, modulus) = 1 for all k <= e/2.
  PVec x = {0, 1};
  PVec xq = pmulmod(x, {1}, mod, p);
  for (int k = 1; k <= e; ++k) {
    xq = ppowmod(xq, p, mod, p);
    if (k <= e / 2) {
      PVec diff = xq;
      if (diff.size() < 2) diff.resize(2, 0);
      diff[1] = ((diff[1] - 1) % p + p) % p;
      PVec g = pgcd(ptrim(diff), mod, p);
      if (static_cast<int>(g.size()) - 1 >= 1) return false;
    }
  }
  return xq == pmulmod(x, {1}, mod, p);
}

constexpr i64 kTableLimit = 1024;
constexpr i64 kFieldSizeLimit = 1 << 20;

}  // namespace

FieldConfig::FieldConfig(int p, std::vector<int> modulus)
    : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p_)) throw error("p must be prime");
  e_ = static_cast<int>(modulus_.size()) - 1;
  if (e_ < 1 || e_ > 8) throw error("extension degree must be in 1..8");
  for (int& c : modulus_) c = ((c % p_) + p_) % p_;
  if (modulus_[e_] != 1) throw error("modulus must be monic");
  if (!is_irreducible(modulus_, p_)) throw error("modulus is not irreducible over F_p");
  q_ = 1;
  for (int i = 0; i < e_; ++i) {
    q_ *= p_;
    if (q_ > kFieldSizeLimit) throw error("field too large");
  }
  tables_ = q_ <= kTableLimit;
  if (tables_) build_tables();
}

Fq FieldConfig::from_int(long long n) const {
  long long r = ((n % p_) + p_) % p_;
  return Fq{static_cast<uint32_t>(r)};
}

Fq FieldConfig::from_digits(const std::vector<int>& digits) const {
  if (static_cast<int>(digits.size()) > e_) throw error("too many digits for field element");
  uint32_t v = 0;
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    int d = ((digits[i] % p_) + p_) % p_;
    v = v * p_ + d;
  }
  return Fq{v};
}

std::vector<int> FieldConfig::digits(Fq a) const {
  std::vector<int> d(e_);
  uint32_t v = a.v;
  for (int i = 0; i < e_; ++i) {
    d[i] = static_cast<int>(v % p_);
    v /= p_;
  }
  return d;
}

int FieldConfig::component(Fq a, int i) const {
  uint32_t v = a.v;
  for (int k = 0; k < i; ++k) v /= p_;
  return static_cast<int>(v % p_);
}

Fq FieldConfig::add_generic(Fq a, Fq b) const {
  uint32_t va = a.v, vb = b.v, r = 0, mult = 1;
  for (int i = 0; i < e_; ++i) {
    uint32_t s = (va % p_ + vb % p_) % p_;
    r += s * mult;
    mult *= p_;
    va /= p_;
    vb /= p_;
  }
  return Fq{r};
}

Fq FieldConfig::mul_generic(Fq a, Fq b) const {
  // digit convolution followed by reduction mod modulus
  std::vector<int> da = digits(a), db = digits(b);
  std::vector<int> r(2 * e_ - 1, 0);
  for (int i = 0; i < e_; ++i)
    for (int j = 0; j < e_; ++j)
      r[i + j] = static_cast<int>((r[i + j] + 1LL * da[i] * db[j]) % p_);
  for (int d = 2 * e_ - 2; d >= e_; --d) {
    int c = r[d];
    if (c == 0) continue;
    for (int i = 0; i <= e_; ++i) {
      int idx = d - e_ + i;
      r[idx] = static_cast<int>(((r[idx] - 1LL * c * modulus_[i]) % p_ + p_) % p_);
    }
  }
  r.resize(e_);
  return from_digits(r);
}

void FieldConfig::build_tables() {
  const size_t n = static_cast<size_t>(q_);
  add_tab_.resize(n * n);
  mul_tab_.resize(n * n);
  neg_tab_.resize(n);
  inv_tab_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      add_tab_[i * n + j] = static_cast<uint16_t>(add_generic(Fq{(uint32_t)i}, Fq{(uint32_t)j}).v);
      mul_tab_[i * n + j] = static_cast<uint16_t>(mul_generic(Fq{(uint32_t)i}, Fq{(uint32_t)j}).v);
    }
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (add_tab_[i * n + j] == 0) neg_tab_[i] = static_cast<uint16_t>(j);
      if (mul_tab_[i * n + j] == 1) inv_tab_[i] = static_cast<uint16_t>(j);
    }
  }
}

Fq FieldConfig::add(Fq a, Fq b) const {
  if (tables_) return Fq{add_tab_[a.v * q_ + b.v]};
  return add_generic(a, b);
}

Fq FieldConfig::neg(Fq a) const {
  if (tables_) return Fq{neg_tab_[a.v]};
  uint32_t va = a.v, r = 0, mult = 1;
  for (int i = 0; i < e_; ++i) {
    uint32_t s = (p_ - va % p_) % p_;
    r += s * mult;
    mult *= p_;
    va /= p_;
  }
  return Fq{r};
}

Fq FieldConfig::sub(Fq a, Fq b) const { return add(a, neg(b)); }

Fq FieldConfig::mul(Fq a, Fq b) const {
  if (tables_) return Fq{mul_tab_[a.v * q_ + b.v]};
  return mul_generic(a, b);
}

Fq FieldConfig::inv(Fq a) const {
  if (a.is_zero()) throw error("division by zero in F_q");
  if (tables_) return Fq{inv_tab_[a.v]};
  return pow(a, q_ - 2);
}

Fq FieldConfig::pow(Fq a, i64 n) const {
  if (n < 0) {
    a = inv(a);
    n = -n;
  }
  Fq r = one(), base = a;
  while (n > 0) {
    if (n & 1) r = mul(r, base);
    base = mul(base, base);
    n >>= 1;
  }
  return r;
}

FieldPtr make_field(int p, std::vector<int> modulus) {
  return std::make_shared<const FieldConfig>(p, std::move(modulus));
}

FieldPtr make_field(i64 q) {
  static const std::map<i64, std::pair<int, std::vector<int>>> builtin = {
      {2, {2, {0, 1}}},          // F_2
      {3, {3, {0, 1}}},          // F_3
      {4, {2, {1, 1, 1}}},       // x^2+x+1
      {5, {5, {0, 1}}},          // F_5
      {7, {7, {0, 1}}},          // F_7
      {8, {2, {1, 1, 0, 1}}},    // x^3+x+1
      {9, {3, {1, 0, 1}}},       // x^2+1
      {16, {2, {1, 1, 0, 0, 1}}},// x^4+x+1
      {25, {5, {1, 1, 1}}},      // x^2+x+1
      {27, {3, {1, 2, 0, 1}}},   // x^3+2x+1
  };
  auto it = builtin.find(q);
  if (it == builtin.end()) throw error("no built-in modulus for q=" + std::to_string(q));
  return make_field(it->second.first, it->second.second);
}

}  // namespace fqz
