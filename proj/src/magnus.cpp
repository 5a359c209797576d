#include "mns/magnus.hpp"

#include <map>

namespace mns {

FreeWord FreeWord::parse(std::string_view text, int alphabet) {
  if (alphabet < 1 || alphabet > 26) throw ParseError("alphabet size must be in [1, 26]");
  std::vector<Letter> raw;
  if (text == "1") text = "";
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch < 'a' || ch > 'z') throw ParseError("bad letter '" + std::string(1, ch) + "' in word '" + std::string(text) + "'");
    if (ch - 'a' >= alphabet)
      throw ParseError("letter '" + std::string(1, ch) + "' exceeds the alphabet of size " + std::to_string(alphabet));
    std::int8_t sign = 1;
    if (i + 1 < text.size() && text[i + 1] == '\'') {
      sign = -1;
      ++i;
    }
    raw.push_back({static_cast<std::uint8_t>(ch - 'a'), sign});
  }
  return word_reduce(alphabet, raw);
}

bool FreeWord::uses_inverses() const {
  for (const Letter& l : letters_)
    if (l.sign < 0) return true;
  return false;
}

FreeWord FreeWord::inverse() const {
  FreeWord out(alphabet_);
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    out.letters_.push_back({it->symbol, static_cast<std::int8_t>(-it->sign)});
  return out;
}

std::string FreeWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string s;
  for (const Letter& l : letters_) {
    s += static_cast<char>('a' + l.symbol);
    if (l.sign < 0) s += '\'';
  }
  return s;
}

FreeWord word_reduce(int alphabet, std::span<const Letter> raw) {
  FreeWord out(alphabet);
  for (const Letter& l : raw) {
    if (l.symbol >= alphabet || (l.sign != 1 && l.sign != -1))
      throw PreconditionError("letter outside the alphabet");
    if (!out.letters_.empty() && out.letters_.back().symbol == l.symbol && out.letters_.back().sign == -l.sign)
      out.letters_.pop_back();
    else
      out.letters_.push_back(l);
  }
  return out;
}

FreeWord word_multiply(const FreeWord& u, const FreeWord& v) {
  if (u.alphabet() != v.alphabet()) throw PreconditionError("words over different alphabets");
  std::vector<Letter> raw = u.letters();
  raw.insert(raw.end(), v.letters().begin(), v.letters().end());
  return word_reduce(u.alphabet(), raw);
}

std::vector<FreeWord> enumerate_reduced_words(int alphabet, int max_length) {
  if (max_length < 0) throw PreconditionError("negative word length");
  std::vector<Letter> letters;
  for (int i = 0; i < alphabet; ++i) {
    letters.push_back({static_cast<std::uint8_t>(i), 1});
    letters.push_back({static_cast<std::uint8_t>(i), -1});
  }
  std::vector<FreeWord> out{FreeWord(alphabet)};
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (const Letter& l : letters) {
        const auto& w = out[i].letters();
        if (!w.empty() && w.back().symbol == l.symbol && w.back().sign == -l.sign) continue;
        std::vector<Letter> next = w;
        next.push_back(l);
        out.push_back(word_reduce(alphabet, next));
      }
    }
    level_begin = level_end;
  }
  return out;
}

std::uint64_t reduced_word_count(int alphabet, int max_length) {
  std::uint64_t total = 1, level = 2 * static_cast<std::uint64_t>(alphabet);
  for (int l = 1; l <= max_length; ++l) {
    total += level;
    level *= 2 * static_cast<std::uint64_t>(alphabet) - 1;
  }
  return total;
}

SeriesContext magnus_context(int alphabet, int degree, const Field& field) {
  return {Monoid::positive(Group::free_monoid(alphabet)), degree, CrossedSystem::trivial(field)};
}

Series magnus_image(const FreeWord& w, int degree, const Field& field) {
  const SeriesContext ctx = magnus_context(w.alphabet(), degree, field);
  std::vector<Series> plus, minus;
  for (int i = 0; i < w.alphabet(); ++i) {
    Element x = FreeMonoidWord{{static_cast<std::uint8_t>(i)}, w.alphabet()};
    Series p = Series::one(ctx);
    p.add_term(x, field.one());
    plus.push_back(p);
    // (1 + x)^-1 = sum_j (-x)^j, expanded eagerly to degree D
    Series m(ctx);
    Element xj = FreeMonoidWord{{}, w.alphabet()};
    for (int j = 0; j <= degree; ++j) {
      m.add_term(xj, field.from_integer(j % 2 == 0 ? 1 : -1));
      xj = multiply(xj, x);
    }
    minus.push_back(m);
  }
  Series image = Series::one(ctx);
  for (const Letter& l : w.letters()) image = image * (l.sign > 0 ? plus : minus)[l.symbol];
  return image;
}

InjectivityReport check_magnus_distinct(const std::vector<FreeWord>& words, int degree) {
  InjectivityReport report;
  report.degree = degree;
  report.words = words.size();
  if (!words.empty()) report.alphabet = words.front().alphabet();
  std::map<std::string, const FreeWord*> seen;
  for (const FreeWord& w : words) {
    report.max_length = std::max(report.max_length, static_cast<int>(w.length()));
    auto [it, inserted] = seen.emplace(magnus_image(w, degree).to_text(), &w);
    if (!inserted && !report.collision && !(*it->second == w)) report.collision = std::make_pair(*it->second, w);
  }
  report.distinct_images = seen.size();
  return report;
}

InjectivityReport verify_magnus_injectivity(int alphabet, int max_length, int degree) {
  if (degree < max_length) throw PreconditionError("injectivity check needs D >= L");
  InjectivityReport report = check_magnus_distinct(enumerate_reduced_words(alphabet, max_length), degree);
  report.alphabet = alphabet;
  report.max_length = max_length;
  return report;
}

}  // namespace mns
