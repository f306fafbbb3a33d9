#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fk {

inline constexpr int kMaxLinks = 10;

// Planar perfect pairing of {1..2N}. Links are 1-based, sorted by their
// left endpoint; partner() gives O(1) lookups.
class LinkPattern {
 public:
  LinkPattern() = default;
  // Validates pairing and planarity, then canonicalises the link order.
  static LinkPattern from_pairs(std::vector<std::array<int, 2>> pairs);
  static LinkPattern unnested(int n);  // {1,2},{3,4},...
  static LinkPattern rainbow(int n);   // {1,2N},{2,2N-1},...

  int n() const { return static_cast<int>(links_.size()); }
  int points() const { return 2 * n(); }
  const std::vector<std::array<int, 2>>& links() const { return links_; }
  int partner(int i) const { return partner_[i]; }
  bool has_link(int i, int j) const;

  std::string to_string() const;  // "1-2,3-4"
  std::string to_nested() const;  // "(12)(34)"

  bool operator==(const LinkPattern& o) const { return links_ == o.links_; }
  bool operator<(const LinkPattern& o) const;  // canonical enumeration order

 private:
  std::vector<std::array<int, 2>> links_;
  std::vector<int> partner_{0};  // index 0 unused
};

struct NonCrossingPartition {
  int n = 0;  // number of wired arcs
  std::vector<std::vector<int>> blocks;  // 1-based, canonical order

  static NonCrossingPartition make(int n, std::vector<std::vector<int>> blocks);
  static NonCrossingPartition singletons(int n);
  static NonCrossingPartition one_block(int n);
  int n_blocks() const { return static_cast<int>(blocks.size()); }
  bool operator==(const NonCrossingPartition& o) const = default;
};

std::size_t catalan(int n);
std::vector<LinkPattern> enumerate_patterns(int n);
// Position of a pattern in enumerate_patterns(n).
int pattern_index(const LinkPattern& p);

int loop_count(const LinkPattern& alpha, const LinkPattern& beta);
// Points of {1..2N} on the meander loop of (alpha above, beta below) through i.
std::vector<int> loop_through(const LinkPattern& alpha, const LinkPattern& beta, int i);

Eigen::MatrixXd meander_matrix(int n, double q);

LinkPattern remove_link(const LinkPattern& beta, int j);
LinkPattern tie(const LinkPattern& beta, int j);

LinkPattern partition_to_pattern(const NonCrossingPartition& pi);
NonCrossingPartition pattern_to_partition(const LinkPattern& beta);
// Number of blocks of the finest partition coarser than both.
int join_blocks(const NonCrossingPartition& a, const NonCrossingPartition& b);

LinkPattern parse_pattern(const std::string& text);

}  // namespace fk
