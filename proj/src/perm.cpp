#include "qsrlab/perm.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qsrlab/errors.hpp"

namespace qsrlab {

CycleType::CycleType(std::vector<std::pair<std::size_t, std::size_t>> parts) {
  std::map<std::size_t, std::size_t> merged;
  for (auto [len, cnt] : parts) {
    if (len == 0) throw std::invalid_argument("cycle length must be positive");
    if (cnt) merged[len] += cnt;
  }
  parts_.assign(merged.begin(), merged.end());
}

std::size_t CycleType::degree() const {
  std::size_t n = 0;
  for (auto [len, cnt] : parts_) n += len * cnt;
  return n;
}

std::size_t CycleType::count(std::size_t length) const {
  for (auto [len, cnt] : parts_)
    if (len == length) return cnt;
  return 0;
}

std::string CycleType::to_string() const {
  if (parts_.empty()) return "-";
  std::ostringstream os;
  bool first = true;
  for (auto [len, cnt] : parts_) {
    if (!first) os << ' ';
    first = false;
    os << len << '^' << cnt;
  }
  return os.str();
}

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (Point v : images_) {
    if (v >= images_.size() || seen[v])
      throw std::invalid_argument("image list is not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::from_images_unchecked(std::vector<Point> images) {
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     std::initializer_list<std::initializer_list<Point>> cycles) {
  std::vector<std::vector<Point>> cs;
  for (auto c : cycles) cs.emplace_back(c);
  return from_cycles(degree, cs);
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<char> used(degree, 0);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= degree || used[c[i]]) throw std::invalid_argument("cycles are not disjoint");
      used[c[i]] = 1;
      img[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  return from_images_unchecked(std::move(inv));
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw DegreeMismatch("compose: degree mismatch");
  std::vector<Point> img(a.degree());
  auto ai = a.images();
  auto bi = b.images();
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = bi[ai[i]];
  return Permutation::from_images_unchecked(std::move(img));
}

Permutation Permutation::pow(long long e) const {
  const std::size_t n = images_.size();
  std::vector<Point> img(n);
  std::vector<char> done(n, 0);
  std::vector<Point> cyc;
  for (std::size_t s = 0; s < n; ++s) {
    if (done[s]) continue;
    cyc.clear();
    for (Point x = static_cast<Point>(s); !done[x]; x = images_[x]) {
      done[x] = 1;
      cyc.push_back(x);
    }
    const long long len = static_cast<long long>(cyc.size());
    long long shift = ((e % len) + len) % len;
    for (long long i = 0; i < len; ++i) img[cyc[i]] = cyc[(i + shift) % len];
  }
  return from_images_unchecked(std::move(img));
}

Permutation Permutation::conjugate(const Permutation& g) const {
  if (g.degree() != degree()) throw DegreeMismatch("conjugate: degree mismatch");
  std::vector<Point> img(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) img[g.images_[i]] = g.images_[images_[i]];
  return from_images_unchecked(std::move(img));
}

CycleType Permutation::cycle_type() const {
  const std::size_t n = images_.size();
  std::vector<std::size_t> counts(n + 1, 0);
  std::vector<char> done(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (done[s]) continue;
    std::size_t len = 0;
    for (Point x = static_cast<Point>(s); !done[x]; x = images_[x]) {
      done[x] = 1;
      ++len;
    }
    ++counts[len];
  }
  std::vector<std::pair<std::size_t, std::size_t>> parts;
  for (std::size_t len = 1; len <= n; ++len)
    if (counts[len]) parts.emplace_back(len, counts[len]);
  return CycleType(std::move(parts));
}

CycleType cycle_type(const Permutation& g) { return g.cycle_type(); }

std::uint64_t Permutation::order() const {
  std::uint64_t r = 1;
  const CycleType ct = cycle_type();
  for (auto [len, cnt] : ct.parts()) {
    (void)cnt;
    std::uint64_t g = std::gcd(r, static_cast<std::uint64_t>(len));
    std::uint64_t f = len / g;
    if (r > std::numeric_limits<std::uint64_t>::max() / f)
      throw std::overflow_error("permutation order overflows 64 bits");
    r *= f;
  }
  return r;
}

std::vector<std::vector<Point>> Permutation::cycles(bool include_fixed) const {
  std::vector<std::vector<Point>> out;
  std::vector<char> done(images_.size(), 0);
  for (std::size_t s = 0; s < images_.size(); ++s) {
    if (done[s]) continue;
    std::vector<Point> c;
    for (Point x = static_cast<Point>(s); !done[x]; x = images_[x]) {
      done[x] = 1;
      c.push_back(x);
    }
    if (c.size() > 1 || include_fixed) out.push_back(std::move(c));
  }
  return out;
}

std::size_t Permutation::fixed_point_count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) c += images_[i] == i;
  return c;
}

Point Permutation::first_moved() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return static_cast<Point>(i);
  return static_cast<Point>(images_.size());
}

bool Permutation::is_even() const {
  std::size_t transpositions = 0;
  const CycleType ct = cycle_type();
  for (auto [len, cnt] : ct.parts()) transpositions += (len - 1) * cnt;
  return transpositions % 2 == 0;
}

std::size_t Permutation::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Point v : images_) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::string Permutation::to_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cs) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i] + 1;
    os << ')';
  }
  return os.str();
}

}  // namespace qsrlab
