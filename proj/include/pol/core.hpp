#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pol/index_set.hpp"

namespace pol {

/// Largest supported instance space. Concepts are packed into one word.
inline constexpr int kMaxDomainSize = 64;

struct LabeledExample {
  int x = 0;
  int y = 0;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

using ExampleSequence = std::vector<LabeledExample>;

/// A total labeling of the instance space {0, ..., n-1}, packed LSB-first:
/// bit i is the label of instance i.
class Concept {
 public:
  Concept() = default;
  Concept(std::uint64_t bits, int domain_size);

  static Concept from_labels(std::span<const int> labels);
  /// Parses a string of '0'/'1' characters; character i labels instance i.
  static Concept from_string(std::string_view text);

  int domain_size() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  int operator()(int x) const { return static_cast<int>((bits_ >> x) & 1U); }
  int ones() const;

  std::string to_string() const;

  friend bool operator==(const Concept&, const Concept&) = default;

 private:
  std::uint64_t bits_ = 0;
  int n_ = 0;
};

/// An immutable, duplicate-free finite set of concepts over a shared domain.
/// Copies share storage, so passing by value is cheap.
class ConceptClass {
 public:
  ConceptClass();

  /// Builds a class from concepts, silently dropping repeated rows while
  /// preserving first-occurrence order.
  static ConceptClass from_concepts(int domain_size, std::span<const Concept> rows);
  /// The empty class over `domain_size` instances.
  static ConceptClass empty(int domain_size);

  int domain_size() const;
  std::size_t size() const;
  bool is_empty() const { return size() == 0; }
  const Concept& operator[](std::size_t i) const;
  const std::vector<Concept>& concepts() const;

  IndexSet all() const;
  IndexSet none() const;
  /// Indices of concepts labeling `x` as `y`.
  const IndexSet& agreeing(int x, int y) const;
  /// Version-space restriction: the members of `space` consistent with `e`.
  IndexSet restrict(const IndexSet& space, LabeledExample e) const;
  IndexSet consistent_with(std::span<const LabeledExample> examples) const;

  /// C_{(x,y)} as a new class; the receiver is unchanged.
  ConceptClass restrict(LabeledExample e) const;
  ConceptClass subclass(const IndexSet& members) const;
  bool is_realizable(std::span<const LabeledExample> examples) const;
  std::optional<std::size_t> index_of(const Concept& c) const;

  /// The union of this class with extra concepts (duplicates dropped).
  ConceptClass with(std::span<const Concept> extra) const;

  void check_instance(int x) const;

 private:
  struct Impl;
  explicit ConceptClass(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// make_class: rows of 0/1 labels, all the same nonzero length.
ConceptClass make_class(const std::vector<std::vector<int>>& rows);

ConceptClass singletons(int n);
/// h_i(x) = 1[x >= i] for i = 0..n, so n + 1 concepts.
ConceptClass thresholds(int n);
ConceptClass powerset(int d);
/// `count` distinct uniformly drawn concepts over `n` instances.
ConceptClass random_class(int n, int count, std::uint64_t seed);

/// Parses generator descriptors: "singletons:N", "thresholds:N",
/// "powerset:D", "random:N:M:SEED", "file:PATH".
ConceptClass generate(std::string_view descriptor);

/// Class file: header "n m", then m rows of n '0'/'1' characters. Blank
/// lines and lines starting with '#' are ignored; whitespace inside a row
/// is ignored.
ConceptClass read_class(std::istream& in);
ConceptClass read_class_file(const std::string& path);
void write_class(std::ostream& out, const ConceptClass& c);

/// Example stream file: one "x y" pair per line; '#' comments allowed.
ExampleSequence read_examples(std::istream& in);
ExampleSequence read_examples_file(const std::string& path);
void write_examples(std::ostream& out, std::span<const LabeledExample> examples);

}  // namespace pol
