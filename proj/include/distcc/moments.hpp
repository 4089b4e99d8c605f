#pragma once

// Word algebra over measurement operators and the index structure of the
// moment matrices used by the semidefinite hierarchy.
//
// Fix a task with M questions and D answers.  A "letter" is one of the
// operators M_{z|y} for y in [M] and z in [D-1]; the last answer of every
// question is eliminated through completeness, so it never appears as a
// letter.  Words are products of letters.  Two relations hold for projective
// measurements:
//
//   M_{z|y} M_{z|y}   = M_{z|y}   (idempotence), and
//   M_{z|y} M_{z'|y}  = 0         for z != z' (orthogonality within a
//                                  question).
//
// Only same-question relations are imposed; operators belonging to different
// questions are left free.  A word is *reduced* when no two adjacent letters
// share a question.  Reduction of an arbitrary word either yields a unique
// reduced word or annihilates it entirely.
//
// A moment matrix at level L is indexed by the reduced words of length at
// most L ("monomials", ordered by length and then lexicographically, with
// the empty word first).  Entry (i, j) stands for the moment of
// reverse(w_i) * w_j.  Because moments are taken against Hermitian operators
// and every letter is Hermitian, the moment of a word and of its reverse are
// complex conjugates; each entry therefore refers to a canonical
// representative (the smaller of the word and its reverse) together with a
// conjugation flag.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "distcc/errors.hpp"
#include "distcc/task.hpp"

namespace distcc {

using Word = std::vector<int>;  // letter ids, most significant first

// Letters are numbered y * (D - 1) + z for z in [0, D-2].
inline int moment_letter_id(int y, int z, int n_z) { return y * (n_z - 1) + z; }
inline int moment_letter_question(int letter, int n_z) { return letter / (n_z - 1); }

// Reduces `raw` against the projective relations.  Returns false when the
// word annihilates (two distinct answers to the same question collide); in
// that case `out` is left empty.
inline bool reduce_word(const Word& raw, int n_z, Word& out) {
  out.clear();
  out.reserve(raw.size());
  for (int letter : raw) {
    if (!out.empty()) {
      int top = out.back();
      if (top == letter) continue;  // idempotence
      if (moment_letter_question(top, n_z) == moment_letter_question(letter, n_z)) {
        out.clear();
        return false;  // orthogonal outcomes annihilate the word
      }
    }
    out.push_back(letter);
  }
  return true;
}

inline Word reverse_word(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

// Length-then-lexicographic order; the order in which monomials are listed.
inline bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct MomentEntry {
  int word = -1;      // index into MomentStructure::words, -1 for a structural zero
  bool conj = false;  // entry is the conjugate of the referenced moment
};

struct MomentStructure {
  int level = 0;
  int n_y = 0;        // questions
  int n_z = 0;        // answers per question
  int n_letters = 0;  // n_y * (n_z - 1)

  // Reduced words of length <= level indexing the rows/columns, empty word
  // first, then by length and lexicographic order.
  std::vector<Word> monomials;

  // Canonical representatives of every word that occurs as an entry, in
  // first-appearance order under a row-major scan of the matrix.
  std::vector<Word> words;
  std::vector<char> self_adjoint;  // words[w] equals its own reverse

  // Row-major (i, j) -> entry map of size K * K.
  std::vector<MomentEntry> entries;

  int identity_word = -1;          // index of the empty word inside `words`
  std::vector<int> letter_word;    // letter id -> index of its length-1 word

  int n_monomials() const { return static_cast<int>(monomials.size()); }
  int n_words() const { return static_cast<int>(words.size()); }
  const MomentEntry& entry(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * monomials.size() + j];
  }
  int letter_id(int y, int z) const { return moment_letter_id(y, z, n_z); }
  // Word carrying the outcome probability p(z | y) for z in [0, D-2].
  int probability_word(int y, int z) const { return letter_word[letter_id(y, z)]; }
};

namespace detail {

constexpr int kMaxMonomials = 500;

}  // namespace detail

inline MomentStructure build_moment_structure(const TaskSpec& task, int level) {
  if (level < 1) fail(errc::invalid_argument, "hierarchy level must be at least 1");

  MomentStructure ms;
  ms.level = level;
  ms.n_y = task.n_y;
  ms.n_z = task.n_z;
  ms.n_letters = task.n_z >= 2 ? task.n_y * (task.n_z - 1) : 0;

  // Enumerate reduced words breadth-first.  Appending letters in ascending
  // order to an already sorted layer keeps each layer sorted, so the full
  // list comes out in length-then-lexicographic order without re-sorting.
  ms.monomials.push_back({});
  std::size_t layer_begin = 0;
  for (int len = 1; len <= level; ++len) {
    std::size_t layer_end = ms.monomials.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (int letter = 0; letter < ms.n_letters; ++letter) {
        const Word& w = ms.monomials[i];
        if (!w.empty()) {
          int top = w.back();
          if (top == letter ||
              moment_letter_question(top, ms.n_z) ==
                  moment_letter_question(letter, ms.n_z))
            continue;  // would not be reduced
        }
        Word next = w;
        next.push_back(letter);
        ms.monomials.push_back(std::move(next));
        if (ms.monomials.size() > detail::kMaxMonomials)
          fail(errc::size_exceeded,
               "moment matrix needs more than " +
                   std::to_string(detail::kMaxMonomials) +
                   " monomials at level " + std::to_string(level));
      }
    }
    layer_begin = layer_end;
  }

  const int K = ms.n_monomials();
  ms.entries.resize(static_cast<std::size_t>(K) * K);
  std::map<Word, int> word_index;
  auto intern = [&](const Word& w) {
    auto it = word_index.find(w);
    if (it != word_index.end()) return it->second;
    int id = static_cast<int>(ms.words.size());
    ms.words.push_back(w);
    ms.self_adjoint.push_back(w == reverse_word(w) ? 1 : 0);
    word_index.emplace(w, id);
    return id;
  };

  Word raw, reduced;
  for (int i = 0; i < K; ++i) {
    const Word rev_i = reverse_word(ms.monomials[i]);
    for (int j = 0; j < K; ++j) {
      raw = rev_i;
      raw.insert(raw.end(), ms.monomials[j].begin(), ms.monomials[j].end());
      MomentEntry& e = ms.entries[static_cast<std::size_t>(i) * K + j];
      if (!reduce_word(raw, ms.n_z, reduced)) {
        e = {-1, false};
        continue;
      }
      Word rev = reverse_word(reduced);
      if (word_less(rev, reduced)) {
        e = {intern(rev), true};
      } else {
        e = {intern(reduced), false};
      }
    }
  }

  ms.identity_word = ms.entry(0, 0).word;
  ms.letter_word.resize(ms.n_letters, -1);
  for (int letter = 0; letter < ms.n_letters; ++letter)
    ms.letter_word[letter] = ms.entry(0, 1 + letter).word;
  return ms;
}

// Human-readable rendering used by hierarchy certificates: the empty word is
// "I", a letter is "M(z|y)" with 1-based indices, and longer words list their
// letters separated by spaces.
inline std::string word_to_string(const Word& w, int n_z) {
  if (w.empty()) return "I";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += ' ';
    out += "M(" + std::to_string(w[i] % (n_z - 1) + 1) + '|' +
           std::to_string(moment_letter_question(w[i], n_z) + 1) + ')';
  }
  return out;
}

}  // namespace distcc
