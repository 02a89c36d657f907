#include "pol/core.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "pol/errors.hpp"

namespace pol {

namespace {

std::uint64_t domain_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

void check_domain_size(int n) {
  if (n < 1 || n > kMaxDomainSize)
    throw InvalidInput("domain size must be in [1, " + std::to_string(kMaxDomainSize) +
                       "], got " + std::to_string(n));
}

bool is_comment_or_blank(std::string_view line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

std::string strip_spaces(std::string_view line) {
  std::string out;
  for (char ch : line)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  return out;
}

int parse_int(std::string_view token, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw InvalidInput("malformed " + std::string(what) + ": '" + std::string(token) + "'");
  return value;
}

}  // namespace

Concept::Concept(std::uint64_t bits, int domain_size) : bits_(bits & domain_mask(domain_size)), n_(domain_size) {
  check_domain_size(domain_size);
}

Concept Concept::from_labels(std::span<const int> labels) {
  if (labels.empty()) throw InvalidInput("concept rows must have length >= 1");
  const int n = static_cast<int>(labels.size());
  check_domain_size(n);
  std::uint64_t bits = 0;
  for (int i = 0; i < n; ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw InvalidInput("labels must be 0 or 1");
    if (labels[i] == 1) bits |= std::uint64_t{1} << i;
  }
  return Concept(bits, n);
}

Concept Concept::from_string(std::string_view text) {
  std::vector<int> labels;
  labels.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw InvalidInput("concept rows may only contain '0' and '1'");
    labels.push_back(ch - '0');
  }
  return from_labels(labels);
}

int Concept::ones() const { return std::popcount(bits_); }

std::string Concept::to_string() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int i = 0; i < n_; ++i)
    if ((*this)(i) == 1) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

struct ConceptClass::Impl {
  int n = 0;
  std::vector<Concept> rows;
  std::vector<std::array<IndexSet, 2>> agree;
  std::unordered_map<std::uint64_t, std::size_t> lookup;
};

ConceptClass::ConceptClass() : ConceptClass(empty(1)) {}

ConceptClass::ConceptClass(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

ConceptClass ConceptClass::from_concepts(int domain_size, std::span<const Concept> rows) {
  check_domain_size(domain_size);
  auto impl = std::make_shared<Impl>();
  impl->n = domain_size;
  for (const auto& c : rows) {
    if (c.domain_size() != domain_size)
      throw InvalidInput("ragged rows: expected length " + std::to_string(domain_size) + ", got " +
                         std::to_string(c.domain_size()));
    if (impl->lookup.emplace(c.bits(), impl->rows.size()).second) impl->rows.push_back(c);
  }
  const std::size_t m = impl->rows.size();
  impl->agree.assign(static_cast<std::size_t>(domain_size), {IndexSet(m), IndexSet(m)});
  for (std::size_t i = 0; i < m; ++i)
    for (int x = 0; x < domain_size; ++x) impl->agree[static_cast<std::size_t>(x)][static_cast<std::size_t>(impl->rows[i](x))].set(i);
  return ConceptClass(std::move(impl));
}

ConceptClass ConceptClass::empty(int domain_size) { return from_concepts(domain_size, {}); }

int ConceptClass::domain_size() const { return impl_->n; }
std::size_t ConceptClass::size() const { return impl_->rows.size(); }
const Concept& ConceptClass::operator[](std::size_t i) const { return impl_->rows[i]; }
const std::vector<Concept>& ConceptClass::concepts() const { return impl_->rows; }

IndexSet ConceptClass::all() const { return IndexSet::full(size()); }
IndexSet ConceptClass::none() const { return IndexSet(size()); }

void ConceptClass::check_instance(int x) const {
  if (x < 0 || x >= impl_->n)
    throw InvalidInput("instance " + std::to_string(x) + " outside domain of size " + std::to_string(impl_->n));
}

const IndexSet& ConceptClass::agreeing(int x, int y) const {
  return impl_->agree[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
}

IndexSet ConceptClass::restrict(const IndexSet& space, LabeledExample e) const {
  check_instance(e.x);
  if (e.y != 0 && e.y != 1) throw InvalidInput("labels must be 0 or 1");
  return space & agreeing(e.x, e.y);
}

IndexSet ConceptClass::consistent_with(std::span<const LabeledExample> examples) const {
  IndexSet v = all();
  for (const auto& e : examples) v = restrict(v, e);
  return v;
}

ConceptClass ConceptClass::restrict(LabeledExample e) const {
  return subclass(restrict(all(), e));
}

ConceptClass ConceptClass::subclass(const IndexSet& members) const {
  std::vector<Concept> rows;
  members.for_each([&](std::size_t i) { rows.push_back(impl_->rows[i]); });
  return from_concepts(impl_->n, rows);
}

bool ConceptClass::is_realizable(std::span<const LabeledExample> examples) const {
  return !consistent_with(examples).empty();
}

std::optional<std::size_t> ConceptClass::index_of(const Concept& c) const {
  if (c.domain_size() != impl_->n) return std::nullopt;
  auto it = impl_->lookup.find(c.bits());
  if (it == impl_->lookup.end()) return std::nullopt;
  return it->second;
}

ConceptClass ConceptClass::with(std::span<const Concept> extra) const {
  std::vector<Concept> rows = impl_->rows;
  rows.insert(rows.end(), extra.begin(), extra.end());
  return from_concepts(impl_->n, rows);
}

ConceptClass make_class(const std::vector<std::vector<int>>& rows) {
  if (rows.empty())
    throw InvalidInput("empty row list; use ConceptClass::empty(n) for the empty class");
  const std::size_t n = rows.front().size();
  if (n == 0) throw InvalidInput("zero-length rows");
  std::vector<Concept> concepts;
  concepts.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != n) throw InvalidInput("ragged rows");
    concepts.push_back(Concept::from_labels(r));
  }
  return ConceptClass::from_concepts(static_cast<int>(n), concepts);
}

ConceptClass singletons(int n) {
  check_domain_size(n);
  std::vector<Concept> rows;
  for (int i = 0; i < n; ++i) rows.emplace_back(std::uint64_t{1} << i, n);
  return ConceptClass::from_concepts(n, rows);
}

ConceptClass thresholds(int n) {
  check_domain_size(n);
  std::vector<Concept> rows;
  for (int i = 0; i <= n; ++i) rows.emplace_back(domain_mask(n) & ~domain_mask(i), n);
  return ConceptClass::from_concepts(n, rows);
}

ConceptClass powerset(int d) {
  if (d < 1 || d > 16) throw InvalidInput("powerset dimension must be in [1, 16]");
  std::vector<Concept> rows;
  const std::uint64_t count = std::uint64_t{1} << d;
  rows.reserve(count);
  // Row order follows the binary value of the label string read left to
  // right, so powerset(2) lists 00, 01, 10, 11.
  for (std::uint64_t v = 0; v < count; ++v) {
    std::uint64_t bits = 0;
    for (int i = 0; i < d; ++i)
      if ((v >> (d - 1 - i)) & 1U) bits |= std::uint64_t{1} << i;
    rows.emplace_back(bits, d);
  }
  return ConceptClass::from_concepts(d, rows);
}

ConceptClass random_class(int n, int count, std::uint64_t seed) {
  check_domain_size(n);
  if (count < 1) throw InvalidInput("random class needs at least one concept");
  if (n < 63 && static_cast<std::uint64_t>(count) > (std::uint64_t{1} << n))
    throw InvalidInput("cannot draw " + std::to_string(count) + " distinct concepts over " +
                       std::to_string(n) + " instances");
  if (count > (1 << 20)) throw InvalidInput("random class size cap (2^20) exceeded");
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> seen;
  std::vector<Concept> rows;
  while (rows.size() < static_cast<std::size_t>(count)) {
    const std::uint64_t bits = rng() & domain_mask(n);
    if (seen.insert(bits).second) rows.emplace_back(bits, n);
  }
  return ConceptClass::from_concepts(n, rows);
}

ConceptClass generate(std::string_view descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string_view::npos) throw InvalidInput("generator descriptor needs 'kind:args'");
  const std::string_view kind = descriptor.substr(0, colon);
  const std::string_view rest = descriptor.substr(colon + 1);
  if (kind == "file") return read_class_file(std::string(rest));

  std::vector<std::string_view> args;
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto next = rest.find(':', start);
    args.push_back(rest.substr(start, next == std::string_view::npos ? std::string_view::npos : next - start));
    if (next == std::string_view::npos) break;
    start = next + 1;
  }
  auto expect = [&](std::size_t k) {
    if (args.size() != k) throw InvalidInput("generator '" + std::string(kind) + "' expects " + std::to_string(k) + " argument(s)");
  };
  if (kind == "singletons") {
    expect(1);
    return singletons(parse_int(args[0], "size"));
  }
  if (kind == "thresholds") {
    expect(1);
    return thresholds(parse_int(args[0], "size"));
  }
  if (kind == "powerset") {
    expect(1);
    return powerset(parse_int(args[0], "dimension"));
  }
  if (kind == "random") {
    expect(3);
    return random_class(parse_int(args[0], "size"), parse_int(args[1], "count"),
                        static_cast<std::uint64_t>(parse_int(args[2], "seed")));
  }
  throw InvalidInput("unknown generator '" + std::string(kind) + "'");
}

ConceptClass read_class(std::istream& in) {
  std::string line;
  std::optional<std::pair<int, int>> header;
  std::vector<Concept> rows;
  while (std::getline(in, line)) {
    if (is_comment_or_blank(line)) continue;
    if (!header) {
      std::istringstream hs(line);
      int n = 0;
      int m = 0;
      std::string extra;
      if (!(hs >> n >> m) || (hs >> extra)) throw InvalidInput("malformed class header: '" + line + "'");
      if (m < 0) throw InvalidInput("negative concept count in class header");
      check_domain_size(n);
      header = {n, m};
      continue;
    }
    const std::string row = strip_spaces(line);
    if (static_cast<int>(row.size()) != header->first)
      throw InvalidInput("class row '" + row + "' does not have " + std::to_string(header->first) + " labels");
    rows.push_back(Concept::from_string(row));
  }
  if (!header) throw InvalidInput("class file has no header");
  if (static_cast<int>(rows.size()) != header->second)
    throw InvalidInput("class header announces " + std::to_string(header->second) + " rows, found " +
                       std::to_string(rows.size()));
  return ConceptClass::from_concepts(header->first, rows);
}

ConceptClass read_class_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open class file '" + path + "'");
  return read_class(in);
}

void write_class(std::ostream& out, const ConceptClass& c) {
  out << c.domain_size() << ' ' << c.size() << '\n';
  for (const auto& h : c.concepts()) out << h.to_string() << '\n';
}

ExampleSequence read_examples(std::istream& in) {
  ExampleSequence seq;
  std::string line;
  while (std::getline(in, line)) {
    if (is_comment_or_blank(line)) continue;
    std::istringstream ls(line);
    LabeledExample e;
    std::string extra;
    if (!(ls >> e.x >> e.y) || (ls >> extra)) throw InvalidInput("malformed example line: '" + line + "'");
    if (e.x < 0 || e.x >= kMaxDomainSize) throw InvalidInput("instance out of range: " + line);
    if (e.y != 0 && e.y != 1) throw InvalidInput("label must be 0 or 1: " + line);
    seq.push_back(e);
  }
  return seq;
}

ExampleSequence read_examples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open stream file '" + path + "'");
  return read_examples(in);
}

void write_examples(std::ostream& out, std::span<const LabeledExample> examples) {
  for (const auto& e : examples) out << e.x << ' ' << e.y << '\n';
}

}  // namespace pol
