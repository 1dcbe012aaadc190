#include "samdde/format.hpp"

#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace samdde {

namespace {

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::size_t end = comma == std::string::npos ? csv.size() : comma;
    out.push_back(csv.substr(pos, end - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

double parse_omega_token(const std::string& token) {
  std::string body = token;
  double factor = 1.0;
  if (body.size() >= 2 && body.substr(body.size() - 2) == "pi") {
    factor = std::numbers::pi;
    body = body.substr(0, body.size() - 2);
    if (body.empty()) body = "1";
  }
  std::size_t used = 0;
  double value;
  try {
    value = std::stod(body, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad omega token '" + token + "'");
  }
  if (used != body.size())
    throw std::invalid_argument("bad omega token '" + token + "'");
  const double omega = value * factor;
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive: '" + token + "'");
  return omega;
}

std::vector<double> parse_omega_list(const std::string& csv) {
  std::vector<double> out;
  for (const auto& tok : split_csv(csv)) out.push_back(parse_omega_token(tok));
  if (out.empty()) throw std::invalid_argument("empty omega list");
  return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  for (const auto& tok : split_csv(csv)) {
    std::size_t used = 0;
    int v;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer token '" + tok + "'");
    }
    if (used != tok.size() || v <= 0)
      throw std::invalid_argument("bad integer token '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::string format_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.5e", x);
  return buf;
}

}  // namespace samdde
