#include "dpgrad/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>

#include "dpgrad/errors.hpp"

namespace dpgrad {

Word free_reduce(std::span<const Letter> letters) {
  Word out;
  out.reserve(letters.size());
  for (Letter x : letters) {
    if (x == 0) throw DomainError("zero is not a letter");
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word inverse(std::span<const Letter> w) {
  Word out(w.rbegin(), w.rend());
  for (auto& x : out) x = -x;
  return out;
}

Word concat(std::span<const Letter> a, std::span<const Letter> b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

Word cyclic_reduce(std::span<const Letter> w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word cyclic_canonical(std::span<const Letter> w) {
  const Word r = cyclic_reduce(w);
  if (r.empty()) return r;
  Word best;
  for (const Word& base : {r, inverse(r)}) {
    for (std::size_t k = 0; k < base.size(); ++k) {
      Word rot(base.begin() + static_cast<std::ptrdiff_t>(k), base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(k));
      if (best.empty() || rot < best) best = std::move(rot);
    }
  }
  return best;
}

std::vector<int> exponent_sums(std::span<const Letter> w, std::size_t rank) {
  std::vector<int> s(rank, 0);
  for (Letter x : w) {
    const auto g = static_cast<std::size_t>(std::abs(x)) - 1;
    if (g >= rank) throw DomainError("letter exceeds presentation rank");
    s[g] += x > 0 ? 1 : -1;
  }
  return s;
}

Word restrict_letters(std::span<const Letter> w, std::size_t first, std::size_t count) {
  Word out;
  for (Letter x : w) {
    const auto g = static_cast<std::size_t>(std::abs(x)) - 1;
    if (g < first || g >= first + count) continue;
    const Letter y = static_cast<Letter>(g - first + 1);
    out.push_back(x > 0 ? y : -y);
  }
  return free_reduce(out);
}

Word shift_letters(std::span<const Letter> w, int offset) {
  Word out(w.begin(), w.end());
  for (auto& x : out) x = x > 0 ? x + offset : x - offset;
  return out;
}

Word commutator_word(Letter x, Letter y) { return free_reduce(Word{-x, -y, x, y}); }

Word parse_word(const std::string& text) {
  Word w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if ((c == 'x' || c == 'X') && i + 1 < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      const int k = std::stoi(text.substr(i + 1, j - i - 1));
      if (k <= 0) throw ParseError("generator numbers start at 1");
      w.push_back(c == 'x' ? k : -k);
      i = j - 1;
    } else if (c >= 'a' && c <= 'z') {
      w.push_back(c - 'a' + 1);
    } else if (c >= 'A' && c <= 'Z') {
      w.push_back(-(c - 'A' + 1));
    } else if (c == '1' && text.find_first_not_of(" \t1") == std::string::npos) {
      // "1" denotes the empty word.
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in word");
    }
  }
  return free_reduce(w);
}

std::string format_word(std::span<const Letter> w, std::size_t rank) {
  if (w.empty()) return "1";
  std::string out;
  if (rank <= 26) {
    for (Letter x : w) out += x > 0 ? static_cast<char>('a' + x - 1) : static_cast<char>('A' - x - 1);
    return out;
  }
  for (Letter x : w) {
    if (!out.empty()) out += ' ';
    out += (x > 0 ? "x" : "X") + std::to_string(std::abs(x));
  }
  return out;
}

Presentation::Presentation(std::size_t rank, std::vector<Word> relators, std::string name)
    : rank_(rank), name_(std::move(name)) {
  for (auto& r : relators) {
    Word w = free_reduce(r);
    for (Letter x : w)
      if (static_cast<std::size_t>(std::abs(x)) > rank_)
        throw DomainError("relator uses a generator beyond the rank");
    if (!w.empty()) relators_.push_back(std::move(w));
  }
}

Presentation free_presentation(std::size_t rank) {
  return Presentation(rank, {}, "F" + std::to_string(rank));
}

Presentation product_presentation(const Presentation& a, const Presentation& b) {
  std::vector<Word> rels = a.relators();
  const int off = static_cast<int>(a.rank());
  for (const auto& r : b.relators()) rels.push_back(shift_letters(r, off));
  for (std::size_t i = 1; i <= a.rank(); ++i)
    for (std::size_t j = 1; j <= b.rank(); ++j)
      rels.push_back(commutator_word(static_cast<Letter>(i), static_cast<Letter>(j) + off));
  std::string name = (a.name().empty() ? "A" : a.name()) + "x" + (b.name().empty() ? "B" : b.name());
  return Presentation(a.rank() + b.rank(), std::move(rels), std::move(name));
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits "key: value"; returns false for blank and comment lines.
bool split_line(const std::string& raw, std::string& key, std::string& value, std::size_t line) {
  const std::string s = trim(raw);
  if (s.empty() || s[0] == '#') return false;
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ParseError("expected 'key: value'", line);
  key = trim(s.substr(0, colon));
  value = trim(s.substr(colon + 1));
  return true;
}

}  // namespace

Presentation parse_presentation(std::istream& in) {
  std::string raw, key, value;
  std::size_t line = 0;
  std::optional<std::size_t> rank;
  std::vector<Word> rels;
  while (std::getline(in, raw)) {
    ++line;
    if (!split_line(raw, key, value, line)) continue;
    if (key == "gens") {
      if (rank) throw ParseError("duplicate 'gens' line", line);
      try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size() || v < 0) throw ParseError("bad generator count", line);
        rank = static_cast<std::size_t>(v);
      } catch (const std::logic_error&) {
        throw ParseError("bad generator count", line);
      }
    } else if (key == "rel") {
      if (!rank) throw ParseError("'rel' before 'gens'", line);
      try {
        Word w = parse_word(value);
        for (Letter x : w)
          if (static_cast<std::size_t>(std::abs(x)) > *rank)
            throw ParseError("relator uses a generator beyond gens", line);
        rels.push_back(std::move(w));
      } catch (const ParseError& e) {
        if (e.line()) throw;
        throw ParseError(e.what(), line);
      }
    } else {
      throw ParseError("unknown key '" + key + "'", line);
    }
  }
  if (!rank) throw ParseError("missing 'gens' line");
  return Presentation(*rank, std::move(rels));
}

Presentation read_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_presentation(in);
}

std::vector<Word> parse_subgroup(std::istream& in) {
  std::string raw, key, value;
  std::size_t line = 0;
  std::vector<Word> gens;
  while (std::getline(in, raw)) {
    ++line;
    if (!split_line(raw, key, value, line)) continue;
    if (key != "gen") throw ParseError("unknown key '" + key + "'", line);
    try {
      gens.push_back(parse_word(value));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line);
    }
  }
  return gens;
}

std::vector<Word> read_subgroup_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_subgroup(in);
}

std::string format_presentation(const Presentation& p) {
  std::ostringstream os;
  os << "gens: " << p.rank() << "\n";
  for (const auto& r : p.relators()) os << "rel: " << format_word(r, p.rank()) << "\n";
  return os.str();
}

}  // namespace dpgrad
