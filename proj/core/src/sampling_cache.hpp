#pragma once

#include <mutex>
#include <vector>

namespace dbscale {
class DbSpace;
}

namespace dbscale::detail {

// Real zeros of s_0 and the matching weights 1 / k(mu, mu), grown on demand.
// Both shipped realizations give an s_0 that is even or odd, so the node set
// is symmetric: `positive` holds the zeros in (0, inf) in increasing order
// and the negative zeros are their mirror images.
struct SamplingCache {
  std::mutex mutex;
  bool initialised = false;
  bool zero_is_node = false;
  double zero_weight = 0.0;
  std::vector<double> positive;
  std::vector<double> positive_weight;

  struct Snapshot {
    bool zero_is_node;
    double zero_weight;
    int first_index;              // n with nodes[0] close to n pi / a
    std::vector<double> nodes;    // first `count` positive zeros
    std::vector<double> weights;
  };

  // Copies out the first `count` positive nodes, computing them if needed.
  Snapshot take(const DbSpace& space, int count);
};

}  // namespace dbscale::detail
