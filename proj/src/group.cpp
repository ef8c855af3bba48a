#include "isoplab/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "isoplab/error.hpp"

namespace isoplab {

namespace {

constexpr int kMaxFreeRank = 26;
constexpr int kMaxSymmetricDegree = 20;  // 20! still fits in 64 bits

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw OverflowError("integer coordinate overflow in addition");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    throw OverflowError("integer coordinate overflow in multiplication");
  return out;
}

std::int64_t checked_neg(std::int64_t a) {
  std::int64_t out;
  if (__builtin_sub_overflow(std::int64_t{0}, a, &out))
    throw OverflowError("integer coordinate overflow in negation");
  return out;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view text, std::string_view what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc::result_out_of_range)
    throw ParseError(std::string(what) + " out of 64-bit range: '" + std::string(text) + "'");
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError("expected integer " + std::string(what) + ", got '" +
                     std::string(text) + "'");
  return value;
}

/// Splits "(a,b,c)" or "[a,b,c]" into its integer fields.
std::vector<std::int64_t> parse_tuple(std::string_view text, char open, char close,
                                      std::string_view what) {
  text = trim(text);
  if (text.size() < 2 || text.front() != open || text.back() != close)
    throw ParseError("expected " + std::string(1, open) + "..." + std::string(1, close) +
                     " for " + std::string(what) + ", got '" + std::string(text) + "'");
  text = text.substr(1, text.size() - 2);
  std::vector<std::int64_t> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    out.push_back(parse_int(text.substr(start, comma - start), what));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join_tuple(std::span<const std::int64_t> code, char open, char close) {
  std::string out(1, open);
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(code[i]);
  }
  out += close;
  return out;
}

int parse_parameter(std::string_view text, std::string_view family) {
  std::int64_t v = parse_int(text, std::string(family) + " parameter");
  if (v < 1 || v > 1'000'000)
    throw ParseError("parameter of " + std::string(family) + " out of range");
  return static_cast<int>(v);
}

}  // namespace

std::strong_ordering operator<=>(const Element& a, const Element& b) {
  if (auto c = a.code_.size() <=> b.code_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.code_.begin(), a.code_.end(),
                                                b.code_.begin(), b.code_.end());
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ e.size();
  for (std::int64_t v : e.code()) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec::GroupSpec(Family family, int parameter, std::optional<std::int64_t> modulus)
    : family_(family), parameter_(parameter), modulus_(modulus) {
  struct Candidate {
    Element element;
    std::string token;
  };
  std::vector<Candidate> candidates;

  switch (family_) {
    case Family::Integer:
      for (int i = 0; i < parameter_; ++i) {
        std::vector<std::int64_t> plus(parameter_, 0), minus(parameter_, 0);
        plus[i] = 1;
        minus[i] = -1;
        candidates.push_back({Element(plus), "+" + std::to_string(i + 1)});
        candidates.push_back({Element(minus), "-" + std::to_string(i + 1)});
      }
      break;
    case Family::Cyclic:
      candidates.push_back({Element({1}), "+1"});
      candidates.push_back({Element({parameter_ - 1}), "-1"});
      break;
    case Family::Dihedral:
      candidates.push_back({Element({1, 0}), "r"});
      candidates.push_back({Element({parameter_ - 1, 0}), "R"});
      candidates.push_back({Element({0, 1}), "s"});
      break;
    case Family::Free:
      for (int i = 0; i < parameter_; ++i) {
        candidates.push_back({Element({i + 1}), std::string(1, static_cast<char>('a' + i))});
        candidates.push_back({Element({-(i + 1)}), std::string(1, static_cast<char>('A' + i))});
      }
      break;
    case Family::Heisenberg: {
      std::int64_t neg = modulus_ ? *modulus_ - 1 : -1;
      candidates.push_back({Element({1, 0, 0}), "x"});
      candidates.push_back({Element({neg, 0, 0}), "X"});
      candidates.push_back({Element({0, 1, 0}), "y"});
      candidates.push_back({Element({0, neg, 0}), "Y"});
      break;
    }
    case Family::Symmetric:
      for (int i = 0; i + 1 < parameter_; ++i) {
        std::vector<std::int64_t> images(parameter_);
        std::iota(images.begin(), images.end(), 1);
        std::swap(images[i], images[i + 1]);
        candidates.push_back({Element(images), "t" + std::to_string(i + 1)});
      }
      break;
  }

  const Element e = identity(*this);
  for (auto& c : candidates) {
    if (c.element == e) continue;
    auto it = std::find(generators_.elements.begin(), generators_.elements.end(), c.element);
    if (it != generators_.elements.end()) continue;
    generators_.elements.push_back(c.element);
    generators_.tokens.push_back(c.token);
  }
  for (const auto& s : generators_.elements) {
    auto inv = inverse(*this, s);
    auto it = std::find(generators_.elements.begin(), generators_.elements.end(), inv);
    if (it == generators_.elements.end())
      throw InternalContradiction("generating set is not symmetric");
    generators_.inverse_index.push_back(
        static_cast<std::size_t>(it - generators_.elements.begin()));
  }
}

GroupSpec GroupSpec::integer_lattice(int rank) {
  if (rank < 1) throw ParseError("Z^k needs k >= 1");
  return GroupSpec(Family::Integer, rank, std::nullopt);
}

GroupSpec GroupSpec::cyclic(int n) {
  if (n < 2) throw ParseError("cyclic group needs n >= 2");
  return GroupSpec(Family::Cyclic, n, std::nullopt);
}

GroupSpec GroupSpec::dihedral(int n) {
  if (n < 3) throw ParseError("dihedral group needs n >= 3");
  return GroupSpec(Family::Dihedral, n, std::nullopt);
}

GroupSpec GroupSpec::free_group(int rank) {
  if (rank < 1 || rank > kMaxFreeRank) throw ParseError("free group needs 1 <= k <= 26");
  return GroupSpec(Family::Free, rank, std::nullopt);
}

GroupSpec GroupSpec::heisenberg(std::optional<std::int64_t> modulus) {
  if (modulus && (*modulus < 2 || *modulus > 2'000'000))
    throw ParseError("Heisenberg modulus must satisfy 2 <= m <= 2000000");
  return GroupSpec(Family::Heisenberg, 3, modulus);
}

GroupSpec GroupSpec::symmetric(int n) {
  if (n < 3 || n > kMaxSymmetricDegree)
    throw ParseError("symmetric group needs 3 <= n <= 20");
  return GroupSpec(Family::Symmetric, n, std::nullopt);
}

GroupSpec GroupSpec::parse(std::string_view text) {
  text = trim(text);
  auto colon = text.find(':');
  std::string_view head = text.substr(0, colon);
  std::optional<std::string_view> arg;
  if (colon != std::string_view::npos) arg = text.substr(colon + 1);

  auto need_arg = [&]() -> int {
    if (!arg) throw ParseError("group '" + std::string(head) + "' needs a parameter");
    return parse_parameter(*arg, head);
  };

  if (head == "z") {
    if (arg) throw ParseError("'z' takes no parameter; use zd:<k>");
    return integer_lattice(1);
  }
  if (head == "zd") return integer_lattice(need_arg());
  if (head == "cyclic") return cyclic(need_arg());
  if (head == "dihedral") return dihedral(need_arg());
  if (head == "free") return free_group(need_arg());
  if (head == "symmetric") return symmetric(need_arg());
  if (head == "heisenberg") {
    if (!arg) return heisenberg();
    return heisenberg(parse_int(*arg, "Heisenberg modulus"));
  }
  throw ParseError("unknown group family '" + std::string(head) + "'");
}

std::string GroupSpec::name() const {
  switch (family_) {
    case Family::Integer:
      return parameter_ == 1 ? "z" : "zd:" + std::to_string(parameter_);
    case Family::Cyclic:
      return "cyclic:" + std::to_string(parameter_);
    case Family::Dihedral:
      return "dihedral:" + std::to_string(parameter_);
    case Family::Free:
      return "free:" + std::to_string(parameter_);
    case Family::Heisenberg:
      return modulus_ ? "heisenberg:" + std::to_string(*modulus_) : "heisenberg";
    case Family::Symmetric:
      return "symmetric:" + std::to_string(parameter_);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Group law

Element identity(const GroupSpec& spec) {
  switch (spec.family()) {
    case Family::Integer:
      return Element(std::vector<std::int64_t>(spec.parameter(), 0));
    case Family::Cyclic:
      return Element({0});
    case Family::Dihedral:
      return Element({0, 0});
    case Family::Free:
      return Element();
    case Family::Heisenberg:
      return Element({0, 0, 0});
    case Family::Symmetric: {
      std::vector<std::int64_t> images(spec.parameter());
      std::iota(images.begin(), images.end(), 1);
      return Element(std::move(images));
    }
  }
  return Element();
}

Element multiply(const GroupSpec& spec, const Element& a, const Element& b) {
  switch (spec.family()) {
    case Family::Integer: {
      std::vector<std::int64_t> out(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_add(a[i], b[i]);
      return Element(std::move(out));
    }
    case Family::Cyclic:
      return Element({mod(a[0] + b[0], spec.parameter())});
    case Family::Dihedral: {
      // r^i s^j . r^k s^l = r^(i + (-1)^j k) s^(j + l)
      std::int64_t n = spec.parameter();
      std::int64_t rot = a[1] == 0 ? a[0] + b[0] : a[0] - b[0];
      return Element({mod(rot, n), a[1] ^ b[1]});
    }
    case Family::Free: {
      std::vector<std::int64_t> out(a.code().begin(), a.code().end());
      for (std::int64_t letter : b.code()) {
        if (!out.empty() && out.back() == -letter)
          out.pop_back();
        else
          out.push_back(letter);
      }
      return Element(std::move(out));
    }
    case Family::Heisenberg: {
      // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')
      if (const auto& m = spec.modulus()) {
        __int128 c = static_cast<__int128>(a[0]) * b[1] + a[2] + b[2];
        return Element({(a[0] + b[0]) % *m, (a[1] + b[1]) % *m,
                        static_cast<std::int64_t>(c % *m)});
      }
      return Element({checked_add(a[0], b[0]), checked_add(a[1], b[1]),
                      checked_add(checked_add(a[2], b[2]), checked_mul(a[0], b[1]))});
    }
    case Family::Symmetric: {
      // (a.b)(i) = a(b(i)): b acts first
      std::vector<std::int64_t> out(a.size());
      for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[static_cast<std::size_t>(b[i] - 1)];
      return Element(std::move(out));
    }
  }
  return Element();
}

Element inverse(const GroupSpec& spec, const Element& a) {
  switch (spec.family()) {
    case Family::Integer: {
      std::vector<std::int64_t> out(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_neg(a[i]);
      return Element(std::move(out));
    }
    case Family::Cyclic:
      return Element({mod(-a[0], spec.parameter())});
    case Family::Dihedral:
      // reflections r^i s are involutions
      return a[1] == 0 ? Element({mod(-a[0], spec.parameter()), 0}) : a;
    case Family::Free: {
      std::vector<std::int64_t> out(a.code().rbegin(), a.code().rend());
      for (auto& letter : out) letter = -letter;
      return Element(std::move(out));
    }
    case Family::Heisenberg: {
      // (a,b,c)^-1 = (-a, -b, a*b - c)
      if (const auto& m = spec.modulus()) {
        __int128 c = static_cast<__int128>(a[0]) * a[1] - a[2];
        return Element({mod(-a[0], *m), mod(-a[1], *m),
                        static_cast<std::int64_t>(((c % *m) + *m) % *m)});
      }
      return Element({checked_neg(a[0]), checked_neg(a[1]),
                      checked_add(checked_mul(a[0], a[1]), checked_neg(a[2]))});
    }
    case Family::Symmetric: {
      std::vector<std::int64_t> out(a.size());
      for (std::size_t i = 0; i < a.size(); ++i)
        out[static_cast<std::size_t>(a[i] - 1)] = static_cast<std::int64_t>(i + 1);
      return Element(std::move(out));
    }
  }
  return Element();
}

std::optional<std::uint64_t> group_order(const GroupSpec& spec) {
  switch (spec.family()) {
    case Family::Integer:
    case Family::Free:
      return std::nullopt;
    case Family::Cyclic:
      return static_cast<std::uint64_t>(spec.parameter());
    case Family::Dihedral:
      return 2 * static_cast<std::uint64_t>(spec.parameter());
    case Family::Heisenberg:
      if (const auto& m = spec.modulus()) {
        auto mm = static_cast<std::uint64_t>(*m);
        return mm * mm * mm;
      }
      return std::nullopt;
    case Family::Symmetric: {
      std::uint64_t f = 1;
      for (int i = 2; i <= spec.parameter(); ++i) f *= static_cast<std::uint64_t>(i);
      return f;
    }
  }
  return std::nullopt;
}

bool below_half_order(const GroupSpec& spec, std::size_t set_size) {
  auto order = group_order(spec);
  return !order || 2 * static_cast<std::uint64_t>(set_size) < *order;
}

// ---------------------------------------------------------------------------
// Text forms

bool is_valid(const GroupSpec& spec, const Element& e) {
  const auto code = e.code();
  const std::int64_t n = spec.parameter();
  switch (spec.family()) {
    case Family::Integer:
      return code.size() == static_cast<std::size_t>(n);
    case Family::Cyclic:
      return code.size() == 1 && code[0] >= 0 && code[0] < n;
    case Family::Dihedral:
      return code.size() == 2 && code[0] >= 0 && code[0] < n && (code[1] == 0 || code[1] == 1);
    case Family::Free:
      for (std::size_t i = 0; i < code.size(); ++i) {
        if (code[i] == 0 || code[i] > n || code[i] < -n) return false;
        if (i > 0 && code[i] == -code[i - 1]) return false;
      }
      return true;
    case Family::Heisenberg:
      if (code.size() != 3) return false;
      if (const auto& m = spec.modulus())
        return std::all_of(code.begin(), code.end(),
                           [&](std::int64_t v) { return v >= 0 && v < *m; });
      return true;
    case Family::Symmetric: {
      if (code.size() != static_cast<std::size_t>(n)) return false;
      std::vector<bool> seen(static_cast<std::size_t>(n), false);
      for (std::int64_t v : code) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)]) return false;
        seen[static_cast<std::size_t>(v - 1)] = true;
      }
      return true;
    }
  }
  return false;
}

Element parse_element(const GroupSpec& spec, std::string_view text) {
  text = trim(text);
  Element out;
  switch (spec.family()) {
    case Family::Integer:
      if (spec.parameter() == 1 && !text.empty() && text.front() != '(')
        out = Element({parse_int(text, "coordinate")});
      else
        out = Element(parse_tuple(text, '(', ')', "Z^k element"));
      break;
    case Family::Cyclic:
      out = Element({parse_int(text, "residue")});
      break;
    case Family::Dihedral:
      out = Element(parse_tuple(text, '(', ')', "dihedral element"));
      break;
    case Family::Free: {
      std::vector<std::int64_t> letters;
      if (text != "e") {
        if (text.empty()) throw ParseError("empty free-group word (spell the identity 'e')");
        for (char ch : text) {
          std::int64_t letter;
          if (ch >= 'a' && ch <= 'z')
            letter = ch - 'a' + 1;
          else if (ch >= 'A' && ch <= 'Z')
            letter = -(ch - 'A' + 1);
          else
            throw ParseError(std::string("invalid free-group letter '") + ch + "'");
          if (letter > spec.parameter() || letter < -spec.parameter())
            throw ParseError(std::string("letter '") + ch + "' exceeds the free rank");
          letters.push_back(letter);
        }
      }
      // non-reduced input denotes the same element as its reduction
      out = multiply(spec, identity(spec), Element(std::move(letters)));
      break;
    }
    case Family::Heisenberg:
      out = Element(parse_tuple(text, '(', ')', "Heisenberg element"));
      break;
    case Family::Symmetric:
      out = Element(parse_tuple(text, '[', ']', "permutation"));
      if (out.size() == static_cast<std::size_t>(spec.parameter()) && !is_valid(spec, out))
        throw ParseError("'" + std::string(text) + "' is not a permutation");
      break;
  }
  if (!is_valid(spec, out))
    throw ParseError("'" + std::string(text) + "' is not a canonical element of " + spec.name());
  return out;
}

std::string format_element(const GroupSpec& spec, const Element& e) {
  switch (spec.family()) {
    case Family::Integer:
      if (spec.parameter() == 1) return std::to_string(e[0]);
      return join_tuple(e.code(), '(', ')');
    case Family::Cyclic:
      return std::to_string(e[0]);
    case Family::Dihedral:
    case Family::Heisenberg:
      return join_tuple(e.code(), '(', ')');
    case Family::Free: {
      if (e.size() == 0) return "e";
      std::string out;
      for (std::int64_t letter : e.code())
        out += letter > 0 ? static_cast<char>('a' + letter - 1)
                          : static_cast<char>('A' - letter - 1);
      return out;
    }
    case Family::Symmetric:
      return join_tuple(e.code(), '[', ']');
  }
  return {};
}

std::vector<std::size_t> parse_word(const GroupSpec& spec, std::string_view text) {
  text = trim(text);
  const auto& gens = spec.generators();
  std::vector<std::size_t> word;
  if (text == "e" && spec.family() == Family::Free) return word;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    // longest matching token wins ("+12" over "+1")
    std::size_t best = gens.size();
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto& tok = gens.tokens[i];
      if (tok.size() > best_len && text.substr(pos, tok.size()) == tok) {
        best = i;
        best_len = tok.size();
      }
    }
    if (best == gens.size())
      throw ParseError("no generator token of " + spec.name() + " at '" +
                       std::string(text.substr(pos)) + "'");
    word.push_back(best);
    pos += best_len;
  }
  return word;
}

Element evaluate_word(const GroupSpec& spec, std::span<const std::size_t> word) {
  Element out = identity(spec);
  for (std::size_t idx : word) out = multiply(spec, out, spec.generators().elements.at(idx));
  return out;
}

}  // namespace isoplab
