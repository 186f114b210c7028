#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rih/hamiltonian.hpp"
#include "rih/lattice.hpp"

namespace rih {

using BigInt = boost::multiprecision::cpp_int;

/// n = 3p with p a prime of exactly 3|x| bits whose top |x| bits spell x.
struct InstanceEncoding {
  std::string x;
  BigInt p;
  BigInt n;
  std::int64_t trials = 0;
};

/// Miller-Rabin with `rounds` independent random bases drawn from a generator seeded with seed.
bool is_probable_prime(const BigInt& v, std::uint64_t seed, unsigned rounds = 64);

/// Randomised search: fresh low bits each trial. Throws std::runtime_error when max_trials runs out.
InstanceEncoding f_search(const std::string& x, std::uint64_t seed, std::int64_t max_trials = 1'000'000);

/// True iff the encoding satisfies the bit layout, n = 3p and primality.
bool check_encoding(const InstanceEncoding& e, std::uint64_t seed = 0x9e3779b97f4a7c15ull);

std::string to_binary(const BigInt& v);

struct Reduction {
  InstanceEncoding encoding;
  LatticeSpec spec;
  std::shared_ptr<const TwoBodyTerm> term;
};

/// Lattice of side f(x) in r dimensions paired with the fixed two-body term for the plug.
Reduction reduction(const std::string& x, int r, const TiPlug& plug, std::uint64_t seed = 1);

/// Term for a plug, built once per process and shared afterwards.
std::shared_ptr<const TwoBodyTerm> cached_site_term(const TiPlug& plug, const TermCoefficients& coeffs = {});

/// Coefficient lists evaluated at n, lowest degree first.
struct DecisionSpec {
  int r = 2;
  std::string plug_id = "zero";
  std::vector<double> p_coeffs;
  std::vector<double> q_coeffs{1.0};
  std::vector<double> g_coeffs{1.0};

  static double eval(const std::vector<double>& c, double n);
  double p(double n) const { return eval(p_coeffs, n); }
  double q(double n) const { return eval(q_coeffs, n); }
  /// Completeness bound 4 n^r (r-1) + 1/g(n).
  double completeness_bound(double n) const;
};

}  // namespace rih
