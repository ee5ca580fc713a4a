// Forbidden families: the predicate interface (violates / creates), explicit
// member lists, and the family text format — blank-line-separated blocks,
// each either a matrix literal or a shorthand such as "K3", "K:2:2",
// "T:3:0-2", "3*T:2:2", or "C:01+T:2:2" ('+' concatenates pieces of one
// member, '<count>*' repeats a piece).
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "core/matrix.hpp"

namespace satkit {

class ForbiddenFamily {
 public:
  virtual ~ForbiddenFamily() = default;

  // True iff some member appears in M as a submatrix up to row/column
  // permutation (multiplicity-aware).
  virtual bool violates(const Matrix& M) const = 0;

  // Would appending column C to the family-free matrix M embed a member?
  // Implementations may assume C is not already a column of M and that M is
  // family-free; the free function creates() enforces the former.
  virtual bool creates_unchecked(const Matrix& M, const Column& C) const = 0;

  // Explicit member list, or nullptr for derived (predicate-only) families.
  virtual const std::vector<Matrix>* members() const { return nullptr; }

  // Largest entry bound over members; hosts must use l >= this.
  virtual int alphabet() const = 0;

  // Column multiplicity beyond which further copies of a column cannot
  // change any containment answer: 1 + the largest member column count.
  // The default derives it from members(); predicate-only families whose
  // member list is implicit must override.
  virtual int multiplicity_cap() const;

  // Stable text encoding used for search fingerprints and cache keys.
  virtual std::string encoding() const = 0;
};

class ExplicitFamily final : public ForbiddenFamily {
 public:
  explicit ExplicitFamily(std::vector<Matrix> members);

  bool violates(const Matrix& M) const override;
  bool creates_unchecked(const Matrix& M, const Column& C) const override;
  const std::vector<Matrix>* members() const override { return &members_; }
  int alphabet() const override { return alphabet_; }
  std::string encoding() const override;

 private:
  std::vector<Matrix> members_;
  int alphabet_ = 1;
};

// Throws Error if M is already family-free-violating; throws if C is present.
bool creates(const Matrix& M, const Column& C, const ForbiddenFamily& fam);
bool family_free(const Matrix& M, const ForbiddenFamily& fam);

// One member from shorthand or matrix text (no blank lines inside).
Matrix parse_member(std::string_view block);
// Whole family file: members separated by blank lines.
std::shared_ptr<const ExplicitFamily> parse_family(std::string_view text);
// Convenience: a single-member family.
std::shared_ptr<const ExplicitFamily> single_member_family(Matrix F);

}  // namespace satkit
