#pragma once

#include <set>
#include <string>
#include <vector>

#include "core/types.hpp"
#include "json.hpp"
#include "macdonald/laurent.hpp"

namespace et::api {

using json = nlohmann::json;

// "a+bi", "a-bi", "bi", "-i", "a"; exponents allowed in either part.
cplx parse_complex(const std::string& s);
double parse_real(const std::string& s);
// "a..b" inclusive; a single integer is a one-element range.
std::vector<int> parse_int_range(const std::string& s);
// comma-separated complex literals
std::vector<cplx> parse_complex_list(const std::string& s);

// Typed access to a flat parameter object. Values are JSON strings or numbers.
class Params {
 public:
  explicit Params(const json& j);

  bool has(const std::string& k) const;
  cplx c(const std::string& k) const;
  cplx c(const std::string& k, cplx def) const;
  double r(const std::string& k) const;
  double r(const std::string& k, double def) const;
  int i(const std::string& k) const;
  int i(const std::string& k, int def) const;
  mac::Rational q(const std::string& k) const;
  std::string s(const std::string& k, const std::string& def) const;
  std::vector<cplx> clist(const std::string& k) const;
  std::vector<cplx> clist(const std::string& k, const std::vector<cplx>& def) const;

  // every key must have been read
  void finish() const;

 private:
  const json& raw(const std::string& k) const;
  std::string text(const std::string& k) const;
  const json& j_;
  mutable std::set<std::string> used_;
};

}  // namespace et::api
