#include "api/params.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace et::api {

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (ch != ' ' && ch != '\t') out += ch;
  return out;
}

double to_double_strict(std::string s, const std::string& whole) {
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw Error(Errc::argument, "malformed number '" + whole + "'");
  return v;
}

}  // namespace

double parse_real(const std::string& in) {
  const std::string s = strip(in);
  return to_double_strict(s, in);
}

cplx parse_complex(const std::string& in) {
  std::string s = strip(in);
  if (s.empty()) throw Error(Errc::argument, "empty complex literal");
  if (s.back() != 'i') return {to_double_strict(s, in), 0.0};
  s.pop_back();
  std::size_t k = std::string::npos;
  for (std::size_t p = s.size(); p-- > 1;)
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
      k = p;
      break;
    }
  const double re = k == std::string::npos ? 0.0 : to_double_strict(s.substr(0, k), in);
  std::string im = k == std::string::npos ? s : s.substr(k);
  double v;
  if (im.empty() || im == "+")
    v = 1.0;
  else if (im == "-")
    v = -1.0;
  else
    v = to_double_strict(im, in);
  return {re, v};
}

std::vector<int> parse_int_range(const std::string& in) {
  const std::string s = strip(in);
  auto to_int = [&](const std::string& t) {
    int v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size())
      throw Error(Errc::argument, "malformed integer range '" + in + "'");
    return v;
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) return {to_int(s)};
  const int a = to_int(s.substr(0, dots)), b = to_int(s.substr(dots + 2));
  if (b < a) throw Error(Errc::argument, "empty range '" + in + "'");
  std::vector<int> out;
  for (int v = a; v <= b; ++v) out.push_back(v);
  return out;
}

std::vector<cplx> parse_complex_list(const std::string& s) {
  std::vector<cplx> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_complex(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Params::Params(const json& j) : j_(j) {
  if (!j_.is_object()) throw Error(Errc::argument, "parameters must be a JSON object");
}

bool Params::has(const std::string& k) const { return j_.contains(k); }

const json& Params::raw(const std::string& k) const {
  if (!j_.contains(k)) throw Error(Errc::argument, "missing parameter '" + k + "'");
  used_.insert(k);
  return j_.at(k);
}

std::string Params::text(const std::string& k) const {
  const json& v = raw(k);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_complex(v.get<double>());
  throw Error(Errc::argument, "parameter '" + k + "' must be a string or number");
}

cplx Params::c(const std::string& k) const {
  const json& v = raw(k);
  if (v.is_number()) return v.get<double>();
  return parse_complex(text(k));
}

cplx Params::c(const std::string& k, cplx def) const { return has(k) ? c(k) : def; }

double Params::r(const std::string& k) const {
  const json& v = raw(k);
  if (v.is_number()) return v.get<double>();
  return parse_real(text(k));
}

double Params::r(const std::string& k, double def) const { return has(k) ? r(k) : def; }

int Params::i(const std::string& k) const {
  const json& v = raw(k);
  if (v.is_number_integer()) return v.get<int>();
  const auto range = parse_int_range(text(k));
  if (range.size() != 1) throw Error(Errc::argument, "parameter '" + k + "' must be a single integer");
  return range[0];
}

int Params::i(const std::string& k, int def) const { return has(k) ? i(k) : def; }

mac::Rational Params::q(const std::string& k) const {
  const json& v = raw(k);
  if (v.is_number_integer()) return mac::Rational(v.get<long>());
  if (v.is_number()) throw Error(Errc::argument, "parameter '" + k + "' must be an exact rational 'p/q'");
  return mac::parse_rational(text(k));
}

std::string Params::s(const std::string& k, const std::string& def) const {
  return has(k) ? text(k) : def;
}

std::vector<cplx> Params::clist(const std::string& k) const { return parse_complex_list(text(k)); }

std::vector<cplx> Params::clist(const std::string& k, const std::vector<cplx>& def) const {
  return has(k) ? clist(k) : def;
}

void Params::finish() const {
  for (auto it = j_.begin(); it != j_.end(); ++it)
    if (!used_.count(it.key())) throw Error(Errc::argument, "unexpected parameter '" + it.key() + "'");
}

}  // namespace et::api
