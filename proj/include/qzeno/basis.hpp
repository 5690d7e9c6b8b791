#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qzeno/errors.hpp"

namespace qzeno {

enum class BasisKind { BosonFock, SpinHalfChain, Spin1Single, Generic };

// Occupations per site (bosons), 1/0 for up/down (spins), or m for spin-1.
typedef std::vector<int> BasisLabel;

inline constexpr int kSpinChainSiteCap = 12;

class Basis {
 public:
  Basis() = default;

  Basis(BasisKind kind, int sites, int total_particles,
        std::vector<BasisLabel> labels)
      : kind_(kind),
        sites_(sites),
        total_particles_(total_particles),
        labels_(std::move(labels)) {
    if (labels_.empty()) throw EmptyBasis("basis has no states");
    for (int k = 0; k < dim(); ++k) index_[labels_[k]] = k;
    if ((int)index_.size() != dim())
      throw ConfigError("basis labels are not unique");
  }

  BasisKind kind() const { return kind_; }
  int sites() const { return sites_; }
  // -1 when the basis does not conserve a particle number
  int total_particles() const { return total_particles_; }
  int dim() const { return (int)labels_.size(); }
  const std::vector<BasisLabel>& labels() const { return labels_; }
  const BasisLabel& label(int k) const { return labels_.at(k); }

  // Position of a label, -1 if absent.
  int index_of(const BasisLabel& l) const {
    auto it = index_.find(l);
    return it == index_.end() ? -1 : it->second;
  }

  std::string label_string(int k) const {
    const BasisLabel& l = label(k);
    std::string out;
    switch (kind_) {
      case BasisKind::SpinHalfChain:
        for (int v : l) out += (v != 0 ? 'u' : 'd');
        return out;
      case BasisKind::Spin1Single:
        return l[0] > 0 ? "+1" : (l[0] < 0 ? "-1" : "0");
      default:
        for (size_t i = 0; i < l.size(); ++i) {
          if (i) out += ',';
          out += std::to_string(l[i]);
        }
        return out;
    }
  }

  // Index of the state named by a label string, -1 if unknown/malformed.
  int parse_label(const std::string& s) const {
    BasisLabel l;
    switch (kind_) {
      case BasisKind::SpinHalfChain:
        for (char c : s) {
          if (c == 'u' || c == 'U' || c == '1')
            l.push_back(1);
          else if (c == 'd' || c == 'D' || c == '0')
            l.push_back(0);
          else
            return -1;
        }
        break;
      case BasisKind::Spin1Single:
        if (s == "-1")
          l = {-1};
        else if (s == "0")
          l = {0};
        else if (s == "1" || s == "+1")
          l = {1};
        else
          return -1;
        break;
      default: {
        size_t pos = 0;
        while (pos <= s.size()) {
          size_t next = s.find(',', pos);
          if (next == std::string::npos) next = s.size();
          try {
            size_t used = 0;
            int v = std::stoi(s.substr(pos, next - pos), &used);
            if (used != next - pos) return -1;
            l.push_back(v);
          } catch (const std::exception&) {
            return -1;
          }
          pos = next + 1;
          if (next == s.size()) break;
        }
        break;
      }
    }
    return index_of(l);
  }

 private:
  BasisKind kind_ = BasisKind::Generic;
  int sites_ = 0;
  int total_particles_ = -1;
  std::vector<BasisLabel> labels_;
  std::map<BasisLabel, int> index_;
};

// All occupation vectors with the given particle total, lexicographically
// descending (so |N,0,...,0> sits at index 0), optionally filtered.
inline Basis fock_basis(
    int sites, int total_particles,
    const std::function<bool(const BasisLabel&)>& constraint = {}) {
  if (sites < 1) throw ConfigError("fock_basis: sites must be >= 1");
  if (total_particles < 0)
    throw ConfigError("fock_basis: total_particles must be >= 0");
  std::vector<BasisLabel> labels;
  BasisLabel current(sites, 0);
  std::function<void(int, int)> fill = [&](int site, int remaining) {
    if (site == sites - 1) {
      current[site] = remaining;
      if (!constraint || constraint(current)) labels.push_back(current);
      return;
    }
    for (int n = remaining; n >= 0; --n) {
      current[site] = n;
      fill(site + 1, remaining - n);
    }
  };
  fill(0, total_particles);
  if (labels.empty())
    throw EmptyBasis("fock_basis: constraint eliminated every state");
  return Basis(BasisKind::BosonFock, sites, total_particles,
               std::move(labels));
}

// 2^sites spin-1/2 configurations, all-up first.
inline Basis spin_chain_basis(int sites, int site_cap = kSpinChainSiteCap) {
  if (sites < 1) throw ConfigError("spin_chain_basis: sites must be >= 1");
  if (sites > site_cap)
    throw TooLarge("spin_chain_basis: " + std::to_string(sites) +
                   " sites exceeds cap of " + std::to_string(site_cap));
  std::vector<BasisLabel> labels;
  labels.reserve(1u << sites);
  for (long long code = (1ll << sites) - 1; code >= 0; --code) {
    BasisLabel l(sites);
    for (int i = 0; i < sites; ++i) l[i] = (code >> (sites - 1 - i)) & 1;
    labels.push_back(std::move(l));
  }
  return Basis(BasisKind::SpinHalfChain, sites, -1, std::move(labels));
}

// Single spin-1 particle, m = -1, 0, +1 in that order.
inline Basis spin1_basis() {
  return Basis(BasisKind::Spin1Single, 1, -1, {{-1}, {0}, {1}});
}

}  // namespace qzeno
