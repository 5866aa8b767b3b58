#include "ksp/instances.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

#include "text_io.hpp"

namespace ksp {

namespace {

using detail::parse_int;

// Uniform integer in [0, bound) by rejection; independent of the standard
// library's distribution implementation so golden files stay portable.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

// C(n, k) saturated at `cap`.
std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long double c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > static_cast<long double>(cap)) return cap;
  }
  return static_cast<std::uint64_t>(c + 0.5L);
}

std::vector<ElementId> sample_set(std::mt19937_64& rng, int n, int k) {
  // Partial Fisher-Yates over 1..n.
  std::vector<ElementId> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  for (int i = 0; i < k; ++i) {
    auto j = i + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<SetIndex> parse_indices(const std::vector<std::string>& t,
                                    std::size_t from, std::size_t to, int line,
                                    int num_sets) {
  std::vector<SetIndex> out;
  for (std::size_t i = from; i < to; ++i) {
    int idx = parse_int<int>(t[i], line);
    if (idx < 1 || idx > num_sets)
      throw ParseError(line, "set index " + t[i] + " out of range");
    out.push_back(idx - 1);
  }
  return out;
}

void write_indices(std::ostream& out, const std::vector<SetIndex>& v) {
  for (SetIndex s : v) out << ' ' << s + 1;
}

}  // namespace

SetFamily read_instance(std::istream& in) {
  detail::LineReader reader(in);
  auto header = reader.next();
  if (!header) throw ParseError(reader.line_number(), "missing header");
  const auto& ht = header->tokens;
  if (ht.size() != 5 || ht[0] != "p" || ht[1] != "sp")
    throw ParseError(header->number, "expected 'p sp <n_elements> <n_sets> <k>'");
  const int n = parse_int<int>(ht[2], header->number);
  const int m = parse_int<int>(ht[3], header->number);
  const int k = parse_int<int>(ht[4], header->number);
  if (n < 0 || m < 0 || k < 1)
    throw ParseError(header->number, "header values out of range");

  std::vector<std::vector<ElementId>> sets;
  std::set<std::vector<ElementId>> seen;
  while (auto line = reader.next()) {
    const auto& t = line->tokens;
    if (t[0] != "s") throw ParseError(line->number, "expected a set line 's ...'");
    if (t.size() < 2) throw ParseError(line->number, "empty set");
    if (static_cast<int>(t.size()) - 1 > k)
      throw ParseError(line->number, "set larger than k");
    std::vector<ElementId> s;
    for (std::size_t i = 1; i < t.size(); ++i) {
      int e = parse_int<int>(t[i], line->number);
      if (e < 1 || e > n)
        throw ParseError(line->number, "element " + t[i] + " out of range");
      s.push_back(e);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw ParseError(line->number, "repeated element in set");
    if (!seen.insert(s).second) throw ParseError(line->number, "duplicate set");
    if (static_cast<int>(sets.size()) == m)
      throw ParseError(line->number, "more sets than the header declares");
    sets.push_back(std::move(s));
  }
  if (static_cast<int>(sets.size()) != m)
    throw ParseError(reader.line_number(), "fewer sets than the header declares");
  return SetFamily(n, k, std::move(sets));
}

void write_instance(std::ostream& out, const SetFamily& family,
                    const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p sp " << family.n_elements() << ' ' << family.num_sets() << ' '
      << family.k() << '\n';
  for (const auto& s : family.sets()) {
    out << 's';
    for (ElementId e : s) out << ' ' << e;
    out << '\n';
  }
}

SetFamily gen_random(int n_elements, int n_sets, int k, std::uint64_t seed) {
  if (k < 1 || n_elements < k)
    throw PreconditionError("need 1 <= k <= n_elements");
  if (n_sets < 0) throw PreconditionError("n_sets must be non-negative");
  const std::uint64_t cap = static_cast<std::uint64_t>(n_sets) * 2 + 1;
  const std::uint64_t total = binomial_capped(n_elements, k, cap);
  if (static_cast<std::uint64_t>(n_sets) > total)
    throw PreconditionError("more sets requested than distinct k-sets exist");

  std::mt19937_64 rng(seed);
  std::vector<std::vector<ElementId>> sets;
  if (total < cap) {
    // Dense request: enumerate every k-set and draw a random prefix.
    std::vector<std::vector<ElementId>> all;
    std::vector<ElementId> cur(k);
    std::iota(cur.begin(), cur.end(), 1);
    while (true) {
      all.push_back(cur);
      int i = k - 1;
      while (i >= 0 && cur[i] == n_elements - k + i + 1) --i;
      if (i < 0) break;
      ++cur[i];
      for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    for (int i = 0; i < n_sets; ++i) {
      auto j = i + static_cast<std::size_t>(
                       uniform_below(rng, all.size() - static_cast<std::size_t>(i)));
      std::swap(all[i], all[j]);
      sets.push_back(all[i]);
    }
  } else {
    // Sparse request: fewer than half of all k-sets, so resampling succeeds
    // with probability above 1/2 per draw.
    std::set<std::vector<ElementId>> seen;
    const std::int64_t retry_cap = 1000LL * n_sets + 1000;
    std::int64_t draws = 0;
    while (static_cast<int>(sets.size()) < n_sets) {
      if (++draws > retry_cap)
        throw Error(ErrorCode::kInternal, "random generator exceeded its retry cap");
      auto s = sample_set(rng, n_elements, k);
      if (seen.insert(s).second) sets.push_back(std::move(s));
    }
  }
  return SetFamily(n_elements, k, std::move(sets));
}

PlantedInstance gen_planted_3dm(int m, int noise, std::uint64_t seed) {
  if (m < 1) throw PreconditionError("m must be at least 1");
  if (noise < 0) throw PreconditionError("noise must be non-negative");
  const long double capacity = static_cast<long double>(m) * m * m - m;
  if (noise > capacity)
    throw PreconditionError("noise exceeds the number of distinct triples");

  std::mt19937_64 rng(seed);
  std::vector<std::vector<ElementId>> sets;
  std::set<std::vector<ElementId>> seen;
  for (int i = 1; i <= m; ++i) {
    sets.push_back({i, m + i, 2 * m + i});
    seen.insert(sets.back());
  }
  const std::int64_t retry_cap = 1000LL * noise + 1000;
  std::int64_t draws = 0;
  while (static_cast<int>(sets.size()) < m + noise) {
    if (++draws > retry_cap)
      throw Error(ErrorCode::kInternal, "3DM generator exceeded its retry cap");
    std::vector<ElementId> t = {
        1 + static_cast<int>(uniform_below(rng, m)),
        m + 1 + static_cast<int>(uniform_below(rng, m)),
        2 * m + 1 + static_cast<int>(uniform_below(rng, m))};
    if (seen.insert(t).second) sets.push_back(std::move(t));
  }
  return {SetFamily(3 * m, 3, std::move(sets)), m};
}

Packing read_certificate(std::istream& in, const SetFamily& family) {
  detail::LineReader reader(in);
  std::vector<SetIndex> members;
  while (auto line = reader.next()) {
    auto idx = parse_indices(line->tokens, 0, line->tokens.size(), line->number,
                             family.num_sets());
    members.insert(members.end(), idx.begin(), idx.end());
  }
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end())
    throw ParseError(reader.line_number(), "set listed twice in certificate");
  return Packing{members};
}

void write_certificate(std::ostream& out, const Packing& packing) {
  for (SetIndex s : packing.members) out << s + 1 << '\n';
}

Trace read_trace(std::istream& in, const SetFamily& family) {
  detail::LineReader reader(in);
  Trace trace;
  bool have_start = false;
  while (auto line = reader.next()) {
    const auto& t = line->tokens;
    if (t[0] == "start") {
      if (have_start) throw ParseError(line->number, "second start line");
      auto idx = parse_indices(t, 1, t.size(), line->number, family.num_sets());
      std::sort(idx.begin(), idx.end());
      trace.start = Packing{idx};
      have_start = true;
    } else if (t[0] == "swap") {
      if (!have_start) throw ParseError(line->number, "swap before start");
      auto add = std::find(t.begin(), t.end(), "add");
      auto rem = std::find(t.begin(), t.end(), "remove");
      if (t.size() < 2 || t[1] != "add" || rem == t.end())
        throw ParseError(line->number, "expected 'swap add ... remove ...'");
      const auto a = static_cast<std::size_t>(add - t.begin());
      const auto r = static_cast<std::size_t>(rem - t.begin());
      ImprovingSet x;
      x.sets = parse_indices(t, a + 1, r, line->number, family.num_sets());
      x.removed = parse_indices(t, r + 1, t.size(), line->number, family.num_sets());
      std::sort(x.sets.begin(), x.sets.end());
      std::sort(x.removed.begin(), x.removed.end());
      trace.swaps.push_back(std::move(x));
    } else {
      throw ParseError(line->number, "expected 'start' or 'swap'");
    }
  }
  if (!have_start) throw ParseError(reader.line_number(), "missing start line");
  return trace;
}

void write_trace(std::ostream& out, const Trace& trace) {
  out << "start";
  write_indices(out, trace.start.members);
  out << '\n';
  for (const auto& x : trace.swaps) {
    out << "swap add";
    write_indices(out, x.sets);
    out << " remove";
    write_indices(out, x.removed);
    out << '\n';
  }
}

}  // namespace ksp
