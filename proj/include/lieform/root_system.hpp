#ifndef LIEFORM_ROOT_SYSTEM_HPP
#define LIEFORM_ROOT_SYSTEM_HPP

#include <map>
#include <string>
#include <vector>

#include "lieform/base.hpp"

namespace lieform {

enum class LieType { A, B, C, D, G2, F4 };

std::string lie_type_name(LieType t, int rank);

/// Root datum of a simple type: Cartan matrix, symmetrizers, and the full
/// list of positive roots in simple-root coordinates, sorted by height then
/// lexicographically.  cartan[i][j] = <alpha_j, alpha_i^vee>.
struct RootDatum {
  LieType type;
  int rank = 0;
  std::vector<std::vector<int>> cartan;
  std::vector<int> sym;                     // d_i = (alpha_i,alpha_i)/2, integer scale
  std::vector<std::vector<int>> positive;   // coordinates over simple roots
  std::map<std::vector<int>, int> index_of; // positive root coords -> index

  int num_positive() const { return static_cast<int>(positive.size()); }
  long algebra_dim() const { return rank + 2L * num_positive(); }

  bool is_positive_root(const std::vector<int>& coords) const {
    return index_of.count(coords) != 0;
  }
  /// (x, y) in the integer scale fixed by sym.
  long pairing(const std::vector<int>& x, const std::vector<int>& y) const;
  /// <beta, alpha_i^vee>
  int cartan_pairing(int i, const std::vector<int>& beta) const;
  int height(const std::vector<int>& coords) const;
  /// highest root, in simple-root coordinates.
  std::vector<int> highest_root() const { return positive.back(); }
  /// a weight in fundamental coordinates, from simple-root coordinates.
  std::vector<long> fundamental_coords(const std::vector<int>& root_coords) const;
};

RootDatum build_root_datum(LieType type, int rank);

/// Exact Weyl dimension of the irreducible module with dominant integral
/// highest weight (fundamental-weight coordinates).
mpz_class weyl_dim(const RootDatum& rd, const std::vector<long>& weight);

/// Casimir eigenvalue on the irreducible with highest weight `weight`,
/// normalized so the adjoint module has eigenvalue 1.
Rat casimir_eigenvalue(const RootDatum& rd, const std::vector<long>& weight);

/// Chevalley structure constants N_{a,b} for all root pairs, fixed by the
/// extraspecial-pair sign convention: N = +(p+1) on extraspecial pairs, the
/// rest forced by the standard 3- and 4-root identities.
class ChevalleyConstants {
 public:
  explicit ChevalleyConstants(const RootDatum& rd);

  /// Signed root reference: composed of index into rd.positive and a sign.
  struct Root {
    int idx;
    bool neg;
  };

  /// N for a pair of (possibly negative) roots; 0 if the sum is not a root.
  Rat structure_constant(Root a, Root b) const;

  /// p = max{ k : b - k a is a root }, both positive.
  int string_down(int a_idx, int b_idx) const;

  const RootDatum& datum() const { return rd_; }

 private:
  std::vector<int> coords_of(Root r) const;
  Rat n_mixed(int x_idx, int y_idx) const;  // N_{x, -y}, both positive, x != y

  const RootDatum& rd_;
  std::map<std::pair<int, int>, long> npos_;  // special pairs (i<j by index)
};

}  // namespace lieform

#endif
