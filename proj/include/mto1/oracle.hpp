#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

namespace mto1 {

// Maps are tables: images[i] is the image of domain element i. Domain and
// codomain elements are raw field indices.
using Histogram = std::map<std::uint32_t, std::uint32_t>;

struct Classification {
  std::uint64_t domain_size = 0;
  Histogram fibers;                   // image -> number of preimages
  std::vector<std::uint32_t> valid_ms;  // ascending
  std::map<std::uint32_t, std::vector<std::uint32_t>> exceptional;  // m -> domain elements

  bool contains(std::uint32_t m) const;
};

Histogram fiber_histogram(std::span<const std::uint32_t> images);

// With `domain` empty, domain element i is labelled i.
Classification classify(std::span<const std::uint32_t> images, std::span<const std::uint32_t> domain = {});

// Throws MOutOfRange unless 1 <= m <= #domain.
bool is_m_to_1(std::span<const std::uint32_t> images, std::uint64_t m);

template <class Fn>
std::vector<std::uint32_t> tabulate(std::uint32_t n, Fn&& fn) {
  std::vector<std::uint32_t> out(n);
  for (std::uint32_t i = 0; i < n; ++i) out[i] = fn(i);
  return out;
}

// Allocation-free repeated counting for sweeps over a fixed codomain.
class FiberCounter {
 public:
  explicit FiberCounter(std::uint32_t codomain_size);
  void count(std::span<const std::uint32_t> images);
  bool valid(std::uint32_t m) const;
  std::vector<std::uint32_t> valid_ms() const;

 private:
  std::uint32_t domain_ = 0;
  std::vector<std::uint32_t> per_image_;
  std::vector<std::uint32_t> per_size_;
  std::vector<std::uint32_t> touched_;
};

using ElementRenderer = std::function<nlohmann::json(std::uint32_t)>;
nlohmann::json to_json(const Classification& c, const ElementRenderer& render = {});

}  // namespace mto1
