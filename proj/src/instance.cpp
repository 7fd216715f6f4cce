#include "pinwheel/instance.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace pinwheel {

Instance::Instance(std::vector<Period> periods) : periods_(std::move(periods)) {
  std::sort(periods_.begin(), periods_.end());
}

Instance::Instance(std::initializer_list<long long> ints) {
  periods_.reserve(ints.size());
  for (long long v : ints) periods_.emplace_back(v);
  std::sort(periods_.begin(), periods_.end());
}

bool Instance::all_integer() const {
  return std::all_of(periods_.begin(), periods_.end(),
                     [](const Period& p) { return p.is_integer(); });
}

Rat Instance::density() const {
  Rat d;
  for (const Period& p : periods_) d += rat(p.den(), p.num());
  return d;
}

Rat Instance::folded_density(long long theta) const {
  if (theta <= 0) throw std::invalid_argument("threshold must be positive");
  Rat d;
  for (const Period& p : periods_) {
    if (!p.is_integer()) throw std::invalid_argument("folded density needs integer periods");
    long long a = p.num();
    // a < theta/2 without rounding: compare 2a against theta.
    if (2 * a < theta)
      d += rat(1, a);
    else
      d += rat(1, a + 1);
  }
  return d;
}

std::string Instance::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < periods_.size(); ++i) {
    if (i) s += ", ";
    s += periods_[i].str();
  }
  return s + "]";
}

namespace {

[[noreturn]] void bad_instance(const std::string& text) {
  throw std::invalid_argument("malformed instance: " + text);
}

}  // namespace

Instance Instance::parse(const std::string& text) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_int = [&]() -> long long {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start || i - start > 18) bad_instance(text);
    return std::stoll(text.substr(start, i - start));
  };

  skip_ws();
  if (i >= text.size() || text[i] != '[') bad_instance(text);
  ++i;
  std::vector<Period> ps;
  skip_ws();
  if (i < text.size() && text[i] == ']') {
    ++i;
  } else {
    while (true) {
      skip_ws();
      long long num = read_int();
      long long den = 1;
      skip_ws();
      if (i < text.size() && text[i] == '/') {
        ++i;
        skip_ws();
        den = read_int();
        if (den != 2 && den != 3) bad_instance(text);
      }
      if (num < den) bad_instance(text);  // value below 1
      ps.emplace_back(num, den);
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ']') {
        ++i;
        break;
      }
      bad_instance(text);
    }
  }
  skip_ws();
  if (i != text.size()) bad_instance(text);
  return Instance(std::move(ps));
}

std::strong_ordering Instance::operator<=>(const Instance& o) const {
  std::size_t n = std::min(periods_.size(), o.periods_.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = periods_[i] <=> o.periods_[i];
    if (c != std::strong_ordering::equal) return c;
  }
  return periods_.size() <=> o.periods_.size();
}

}  // namespace pinwheel
