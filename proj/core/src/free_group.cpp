#include "cogrowth/free_group.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "cogrowth/errors.hpp"

namespace cogrowth {
namespace {

constexpr const char* kGeneratorNames = "xyzw";

}  // namespace

FreeGroupWord::FreeGroupWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (Letter letter : letters_) {
    if (letter == 0) {
      throw InvalidInput("letter 0 is not a generator");
    }
  }
}

FreeGroupWord::FreeGroupWord(std::initializer_list<int> letters) {
  letters_.reserve(letters.size());
  for (int letter : letters) {
    if (letter == 0 || std::abs(letter) > 127) {
      throw InvalidInput("letter out of range");
    }
    letters_.push_back(static_cast<Letter>(letter));
  }
}

bool FreeGroupWord::is_reduced() const {
  for (std::size_t i = 1; i < letters_.size(); ++i) {
    if (letters_[i] == -letters_[i - 1]) {
      return false;
    }
  }
  return true;
}

bool FreeGroupWord::is_cyclically_reduced() const {
  return is_reduced() && (letters_.size() < 2 || letters_.front() != -letters_.back());
}

FreeGroupWord FreeGroupWord::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& letter : out) {
    letter = static_cast<Letter>(-letter);
  }
  return FreeGroupWord(std::move(out));
}

FreeGroupWord FreeGroupWord::operator*(const FreeGroupWord& other) const {
  std::vector<Letter> joined = letters_;
  joined.insert(joined.end(), other.letters_.begin(), other.letters_.end());
  return freely_reduce(joined);
}

std::string FreeGroupWord::to_string() const {
  std::string out;
  for (Letter letter : letters_) {
    if (!out.empty()) {
      out += ' ';
    }
    const int gen = std::abs(letter);
    if (gen <= 4) {
      const char ch = kGeneratorNames[gen - 1];
      out += letter > 0 ? ch : static_cast<char>(std::toupper(ch));
    } else {
      out += (letter > 0 ? "g" : "G") + std::to_string(gen);
    }
  }
  return out;
}

FreeGroupWord FreeGroupWord::parse(const std::string& text) {
  std::istringstream in(text);
  std::vector<Letter> letters;
  std::string token;
  while (in >> token) {
    int gen = 0;
    bool inverse = false;
    if (token.size() == 1) {
      const char lower = static_cast<char>(std::tolower(token[0]));
      const std::string names = kGeneratorNames;
      const auto pos = names.find(lower);
      if (pos == std::string::npos) {
        throw InvalidInput("unknown generator '" + token + "'");
      }
      gen = static_cast<int>(pos) + 1;
      inverse = std::isupper(static_cast<unsigned char>(token[0])) != 0;
    } else if ((token[0] == 'g' || token[0] == 'G') && token.size() > 1) {
      gen = std::stoi(token.substr(1));
      inverse = token[0] == 'G';
    } else {
      throw InvalidInput("unknown generator '" + token + "'");
    }
    if (gen < 1 || gen > 127) {
      throw InvalidInput("generator index out of range in '" + token + "'");
    }
    letters.push_back(static_cast<Letter>(inverse ? -gen : gen));
  }
  return FreeGroupWord(std::move(letters));
}

FreeGroupWord freely_reduce(const std::vector<Letter>& letters) {
  std::vector<Letter> stack;
  stack.reserve(letters.size());
  for (Letter letter : letters) {
    if (!stack.empty() && stack.back() == -letter) {
      stack.pop_back();
    } else {
      stack.push_back(letter);
    }
  }
  return FreeGroupWord(std::move(stack));
}

CyclicDecomposition cyclic_reduce(const FreeGroupWord& w) {
  if (!w.is_reduced()) {
    throw InvalidInput("cyclic_reduce needs a reduced word, got '" + w.to_string() + "'");
  }
  const auto& letters = w.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == -letters[hi - 1]) {
    ++lo;
    --hi;
  }
  return {FreeGroupWord(std::vector<Letter>(letters.begin() + static_cast<std::ptrdiff_t>(lo),
                                            letters.begin() + static_cast<std::ptrdiff_t>(hi))),
          lo};
}

namespace {

// Smallest p dividing |core| with core = (core[0..p))^{|core|/p}.
std::size_t smallest_period(const std::vector<Letter>& core) {
  const std::size_t n = core.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) {
      continue;
    }
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) {
      periodic = core[i] == core[i - p];
    }
    if (periodic) {
      return p;
    }
  }
  return n;
}

}  // namespace

bool is_square(const FreeGroupWord& w) {
  const auto core = cyclic_reduce(w).core.letters();
  if (core.size() % 2 != 0) {
    return false;
  }
  const std::size_t half = core.size() / 2;
  for (std::size_t i = 0; i < half; ++i) {
    if (core[i] != core[i + half]) {
      return false;
    }
  }
  return true;
}

int proper_power_index(const FreeGroupWord& w) {
  if (w.empty()) {
    throw InvalidInput("power index of the identity is undefined");
  }
  const auto core = cyclic_reduce(w).core.letters();
  return static_cast<int>(core.size() / smallest_period(core));
}

int divisor_count(long q) {
  if (q < 1) {
    throw InvalidInput("divisor_count needs q >= 1");
  }
  int count = 0;
  for (long k = 1; k * k <= q; ++k) {
    if (q % k == 0) {
      count += (k * k == q) ? 1 : 2;
    }
  }
  return count;
}

std::uint64_t reduced_word_count(int rank, int t) {
  if (rank < 1 || t < 0) {
    throw InvalidInput("reduced_word_count needs rank >= 1 and t >= 0");
  }
  if (t == 0) {
    return 1;
  }
  std::uint64_t out = 2 * static_cast<std::uint64_t>(rank);
  for (int i = 1; i < t; ++i) {
    const std::uint64_t next = out * (2 * static_cast<std::uint64_t>(rank) - 1);
    if (next / (2 * static_cast<std::uint64_t>(rank) - 1) != out) {
      return UINT64_MAX;
    }
    out = next;
  }
  return out;
}

void for_each_reduced_word(int rank, int t, const std::function<void(const FreeGroupWord&)>& visit,
                           std::uint64_t budget) {
  if (rank < 1 || rank > 127) {
    throw InvalidInput("rank must be in 1..127");
  }
  const std::uint64_t total = reduced_word_count(rank, t);
  if (total > budget) {
    throw BudgetExceeded("enumerating " + std::to_string(total) +
                         " reduced words exceeds the budget of " + std::to_string(budget));
  }
  // alphabet in a fixed order: 1, -1, 2, -2, ...
  std::vector<Letter> alphabet;
  for (int g = 1; g <= rank; ++g) {
    alphabet.push_back(static_cast<Letter>(g));
    alphabet.push_back(static_cast<Letter>(-g));
  }
  std::vector<Letter> word(static_cast<std::size_t>(t));
  std::vector<std::size_t> choice(static_cast<std::size_t>(t), 0);
  if (t == 0) {
    visit(FreeGroupWord());
    return;
  }
  // odometer over positions, skipping letters that cancel the previous one
  int pos = 0;
  while (pos >= 0) {
    auto& k = choice[static_cast<std::size_t>(pos)];
    if (k == alphabet.size()) {
      k = 0;
      --pos;
      if (pos >= 0) {
        ++choice[static_cast<std::size_t>(pos)];
      }
      continue;
    }
    const Letter letter = alphabet[k];
    if (pos > 0 && letter == -word[static_cast<std::size_t>(pos) - 1]) {
      ++k;
      continue;
    }
    word[static_cast<std::size_t>(pos)] = letter;
    if (pos + 1 == t) {
      visit(FreeGroupWord(word));
      ++k;
    } else {
      ++pos;
    }
  }
}

}  // namespace cogrowth
