#include "mto1/oracle.hpp"

#include <algorithm>
#include <string>

#include "mto1/error.hpp"

namespace mto1 {

bool Classification::contains(std::uint32_t m) const {
  return std::binary_search(valid_ms.begin(), valid_ms.end(), m);
}

Histogram fiber_histogram(std::span<const std::uint32_t> images) {
  Histogram h;
  for (auto y : images) ++h[y];
  return h;
}

namespace {

std::vector<std::uint32_t> valid_from_histogram(const Histogram& fibers, std::uint64_t n) {
  std::map<std::uint32_t, std::uint64_t> by_size;
  for (const auto& [img, size] : fibers) ++by_size[size];
  std::vector<std::uint32_t> out;
  for (const auto& [size, cnt] : by_size) {
    if (size >= 1 && size <= n && cnt == n / size) out.push_back(size);
  }
  return out;
}

}  // namespace

Classification classify(std::span<const std::uint32_t> images, std::span<const std::uint32_t> domain) {
  if (!domain.empty() && domain.size() != images.size()) {
    throw Error(ErrorCode::PreconditionViolated, "domain labels and images differ in length");
  }
  Classification c;
  c.domain_size = images.size();
  c.fibers = fiber_histogram(images);
  c.valid_ms = valid_from_histogram(c.fibers, c.domain_size);
  for (auto m : c.valid_ms) {
    auto& ex = c.exceptional[m];
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (c.fibers.at(images[i]) != m) ex.push_back(domain.empty() ? static_cast<std::uint32_t>(i) : domain[i]);
    }
    std::sort(ex.begin(), ex.end());
  }
  return c;
}

bool is_m_to_1(std::span<const std::uint32_t> images, std::uint64_t m) {
  if (m < 1 || m > images.size()) {
    throw Error(ErrorCode::MOutOfRange,
                "m = " + std::to_string(m) + " outside [1, " + std::to_string(images.size()) + "]");
  }
  const auto fibers = fiber_histogram(images);
  std::uint64_t cnt = 0;
  for (const auto& [img, size] : fibers) cnt += (size == m);
  return cnt == images.size() / m;
}

FiberCounter::FiberCounter(std::uint32_t codomain_size) : per_image_(codomain_size, 0) {}

void FiberCounter::count(std::span<const std::uint32_t> images) {
  for (auto y : touched_) per_image_[y] = 0;
  touched_.clear();
  domain_ = static_cast<std::uint32_t>(images.size());
  per_size_.assign(domain_ + 1, 0);
  for (auto y : images) {
    if (per_image_[y]++ == 0) touched_.push_back(y);
  }
  for (auto y : touched_) ++per_size_[per_image_[y]];
}

bool FiberCounter::valid(std::uint32_t m) const {
  if (m < 1 || m > domain_) return false;
  return per_size_[m] == domain_ / m;
}

std::vector<std::uint32_t> FiberCounter::valid_ms() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 1; m <= domain_; ++m) {
    if (per_size_[m] != 0 && valid(m)) out.push_back(m);
  }
  return out;
}

nlohmann::json to_json(const Classification& c, const ElementRenderer& render) {
  auto r = [&](std::uint32_t x) { return render ? render(x) : nlohmann::json(x); };
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& [img, size] : c.fibers) hist.push_back({{"image", r(img)}, {"size", size}});
  nlohmann::json ex = nlohmann::json::object();
  for (const auto& [m, elems] : c.exceptional) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto e : elems) arr.push_back(r(e));
    ex[std::to_string(m)] = std::move(arr);
  }
  return {{"domain_size", c.domain_size}, {"histogram", hist}, {"valid_ms", c.valid_ms}, {"exceptional", ex}};
}

}  // namespace mto1
