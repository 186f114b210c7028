#include "rih/instance.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include <boost/multiprecision/miller_rabin.hpp>

namespace rih {

std::string to_binary(const BigInt& v) {
  if (v == 0) return "0";
  std::string s;
  BigInt t = v;
  while (t > 0) {
    s.push_back((t & 1) == 1 ? '1' : '0');
    t >>= 1;
  }
  return std::string(s.rbegin(), s.rend());
}

bool is_probable_prime(const BigInt& v, std::uint64_t seed, unsigned rounds) {
  std::mt19937_64 gen(seed);
  return boost::multiprecision::miller_rabin_test(v, rounds, gen);
}

InstanceEncoding f_search(const std::string& x, std::uint64_t seed, std::int64_t max_trials) {
  if (x.empty() || x[0] != '1') throw std::invalid_argument("x must be a non-empty bit string with leading 1");
  for (char c : x)
    if (c != '0' && c != '1') throw std::invalid_argument("x must contain only 0 and 1");
  const std::size_t k = x.size();
  const std::size_t low_bits = 2 * k;
  BigInt head = 0;
  for (char c : x) head = (head << 1) | (c == '1' ? 1 : 0);
  std::mt19937_64 gen(seed);
  InstanceEncoding e;
  e.x = x;
  for (e.trials = 1; e.trials <= max_trials; ++e.trials) {
    BigInt low = 0;
    for (std::size_t b = 0; b < low_bits; b += 64) low = (low << 64) | BigInt(gen());
    low &= (BigInt(1) << low_bits) - 1;
    low |= 1;  // even candidates are never prime here
    const BigInt p = (head << low_bits) | low;
    if (is_probable_prime(p, gen())) {
      e.p = p;
      e.n = 3 * p;
      return e;
    }
  }
  throw std::runtime_error("f_search: trial budget exhausted for x = " + x);
}

bool check_encoding(const InstanceEncoding& e, std::uint64_t seed) {
  const std::string bits = to_binary(e.p);
  if (bits.size() != 3 * e.x.size()) return false;
  if (bits.compare(0, e.x.size(), e.x) != 0) return false;
  if (e.n != 3 * e.p || e.n % 3 != 0) return false;
  return is_probable_prime(e.p, seed, 64);
}

std::shared_ptr<const TwoBodyTerm> cached_site_term(const TiPlug& plug, const TermCoefficients& coeffs) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const TwoBodyTerm>> cache;
  std::string key = plug.id + "|" + std::to_string(plug.d);
  for (double c : {coeffs.tile, coeffs.epr, coeffs.loop, coeffs.copy, coeffs.ri, coeffs.vri}) key += "|" + std::to_string(c);
  for (const auto* m : {&plug.h_ti, &plug.v_ti})
    for (Eigen::Index i = 0; i < m->size(); ++i) key += "," + std::to_string(m->data()[i]);
  std::lock_guard<std::mutex> lk(mu);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto term = std::make_shared<const TwoBodyTerm>(build_site_term(plug, coeffs));
  cache.emplace(key, term);
  return term;
}

Reduction reduction(const std::string& x, int r, const TiPlug& plug, std::uint64_t seed) {
  Reduction red;
  red.encoding = f_search(x, seed);
  if (red.encoding.n > BigInt(std::numeric_limits<std::int64_t>::max()))
    throw std::overflow_error("f(x) does not fit a 64-bit side length");
  red.spec = LatticeSpec(r, static_cast<std::int64_t>(red.encoding.n), Boundary::periodic);
  red.term = cached_site_term(plug);
  return red;
}

double DecisionSpec::eval(const std::vector<double>& c, double n) {
  double v = 0.0, pw = 1.0;
  for (double a : c) {
    v += a * pw;
    pw *= n;
  }
  return v;
}

double DecisionSpec::completeness_bound(double n) const {
  const double g = eval(g_coeffs, n);
  return 4.0 * std::pow(n, r) * (r - 1) + (g != 0.0 ? 1.0 / g : 0.0);
}

}  // namespace rih
