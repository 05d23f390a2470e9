#pragma once

// Alphabet, words and the two rewriting operations of the hinged-tiling
// L-system, plus the "00101LLR"-style script notation.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace truchet {

// Thrown when an input breaks a structural precondition (bad script text,
// alternation violation, odd turn-only seed, ...).
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown for geometric/domain violations (closed walk not closing, ...).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

enum class Symbol : std::uint8_t {
    TurnL,  // 'L'
    TurnR,  // 'R'
    CrossH, // 'h' : crossing a horizontal grid line
    CrossV, // 'v' : crossing a vertical grid line
};

inline bool is_turn(Symbol s)  { return s == Symbol::TurnL || s == Symbol::TurnR; }
inline bool is_cross(Symbol s) { return s == Symbol::CrossH || s == Symbol::CrossV; }

inline char symbol_char(Symbol s) {
    switch (s) {
        case Symbol::TurnL:  return 'L';
        case Symbol::TurnR:  return 'R';
        case Symbol::CrossH: return 'h';
        case Symbol::CrossV: return 'v';
    }
    return '?';
}

// A word over {L,R,h,v}. Turns and crossings strictly alternate in class and
// the crossing letters strictly alternate h,v along the word; for closed
// words both alternations also hold cyclically.
struct Word {
    std::vector<Symbol> symbols;
    bool closed = false;

    std::size_t size() const { return symbols.size(); }

    int crossings() const {
        int n = 0;
        for (Symbol s : symbols) n += is_cross(s) ? 1 : 0;
        return n;
    }
    int turns() const { return static_cast<int>(symbols.size()) - crossings(); }

    std::string str() const {
        std::string out;
        out.reserve(symbols.size());
        for (Symbol s : symbols) out.push_back(symbol_char(s));
        return out;
    }
};

// Sequence of hinged-tiling operations, applied index 0 first.
struct OpSequence {
    std::vector<std::uint8_t> bits;

    std::size_t size() const { return bits.size(); }
    bool empty() const { return bits.empty(); }

    std::string str() const {
        std::string out;
        out.reserve(bits.size());
        for (auto b : bits) out.push_back(b ? '1' : '0');
        return out;
    }

    static OpSequence parse(const std::string& text) {
        OpSequence ops;
        ops.bits.reserve(text.size());
        for (char c : text) {
            if (c == '0') ops.bits.push_back(0);
            else if (c == '1') ops.bits.push_back(1);
            else throw parse_error(std::string("illegal operation character '") + c + "'");
        }
        return ops;
    }

    // Op 1 is op 0 reflected; mirroring a whole sequence flips every bit.
    OpSequence mirrored() const {
        OpSequence m = *this;
        for (auto& b : m.bits) b ^= 1u;
        return m;
    }
};

struct Script {
    OpSequence ops;
    Word seed;

    std::string str() const { return ops.str() + seed.str(); }
};

namespace detail {

inline void check_alternation(const std::vector<Symbol>& syms, bool closed) {
    const std::size_t n = syms.size();
    if (n == 0) throw parse_error("empty word");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (is_turn(syms[i]) == is_turn(syms[i + 1]))
            throw parse_error("turn/cross alternation violated at position " + std::to_string(i + 1));
    }
    Symbol prev_cross = Symbol::TurnL; // sentinel: none yet
    bool have_prev = false;
    for (Symbol s : syms) {
        if (!is_cross(s)) continue;
        if (have_prev && s == prev_cross)
            throw parse_error("h/v alternation violated");
        prev_cross = s;
        have_prev = true;
    }
    if (closed) {
        if (n % 2 != 0) throw parse_error("closed word must have even length");
        if (is_turn(syms.front()) == is_turn(syms.back()))
            throw parse_error("closed word violates cyclic class alternation");
        // cyclic h/v alternation: first and last crossings must differ
        Symbol first_cross = Symbol::TurnL, last_cross = Symbol::TurnL;
        for (Symbol s : syms) { if (is_cross(s)) { first_cross = s; break; } }
        for (std::size_t i = n; i-- > 0;) { if (is_cross(syms[i])) { last_cross = syms[i]; break; } }
        if (is_cross(first_cross) && first_cross == last_cross && first_cross != Symbol::TurnL) {
            // only possible with >= 2 crossings
            int ncross = 0;
            for (Symbol s : syms) ncross += is_cross(s) ? 1 : 0;
            if (ncross > 1) throw parse_error("closed word violates cyclic h/v alternation");
        }
    }
}

} // namespace detail

// Validates the word invariants, throws parse_error on violation.
inline void validate(const Word& w) { detail::check_alternation(w.symbols, w.closed); }

inline Word make_word(const std::string& letters, bool closed = false) {
    Word w;
    w.closed = closed;
    w.symbols.reserve(letters.size());
    for (char c : letters) {
        switch (c) {
            case 'L': w.symbols.push_back(Symbol::TurnL); break;
            case 'R': w.symbols.push_back(Symbol::TurnR); break;
            case 'h': w.symbols.push_back(Symbol::CrossH); break;
            case 'v': w.symbols.push_back(Symbol::CrossV); break;
            default: throw parse_error(std::string("illegal word character '") + c + "'");
        }
    }
    validate(w);
    return w;
}

// One rewriting step. Op 0: h -> hLv, v -> hRv; op 1: h -> hRv, v -> hLv.
// Turn letters are fixed points.
inline Word apply_op(const Word& w, int op) {
    if (op != 0 && op != 1) throw std::invalid_argument("op must be 0 or 1");
    Word out;
    out.closed = w.closed;
    out.symbols.reserve(w.symbols.size() * 3);
    const Symbol hmid = (op == 0) ? Symbol::TurnL : Symbol::TurnR;
    const Symbol vmid = (op == 0) ? Symbol::TurnR : Symbol::TurnL;
    for (Symbol s : w.symbols) {
        switch (s) {
            case Symbol::TurnL:
            case Symbol::TurnR:
                out.symbols.push_back(s);
                break;
            case Symbol::CrossH:
                out.symbols.push_back(Symbol::CrossH);
                out.symbols.push_back(hmid);
                out.symbols.push_back(Symbol::CrossV);
                break;
            case Symbol::CrossV:
                out.symbols.push_back(Symbol::CrossH);
                out.symbols.push_back(vmid);
                out.symbols.push_back(Symbol::CrossV);
                break;
        }
    }
    return out;
}

// Folds apply_op over the sequence, index 0 first.
inline Word apply_ops(const Word& w, const OpSequence& ops) {
    Word cur = w;
    for (auto b : ops.bits) cur = apply_op(cur, b);
    return cur;
}

// Expands a closed turn-only seed t1..t2k by interleaving crossings
// t1 v t2 h t3 v ...  The first crossing is fixed to v; on the even grids
// the paper's closed examples live on, that choice is a global rotation.
inline Word expand_turn_seed(const std::string& turns) {
    if (turns.empty()) throw parse_error("empty seed");
    if (turns.size() % 2 != 0)
        throw parse_error("turn-only seed must have even length to close");
    std::string letters;
    letters.reserve(turns.size() * 2);
    for (std::size_t i = 0; i < turns.size(); ++i) {
        letters.push_back(turns[i]);
        letters.push_back(i % 2 == 0 ? 'v' : 'h');
    }
    return make_word(letters, /*closed=*/true);
}

// Grammar: script := [01]* (turnword | fullword), whitespace forbidden.
// A turn-only remainder is expanded as a closed word; a remainder with
// explicit crossings is validated as written (open).
inline Script parse_script(const std::string& text) {
    if (text.empty()) throw parse_error("empty script");
    std::size_t i = 0;
    while (i < text.size() && (text[i] == '0' || text[i] == '1')) ++i;
    Script sc;
    sc.ops = OpSequence::parse(text.substr(0, i));
    const std::string rest = text.substr(i);
    if (rest.empty()) throw parse_error("script has no seed word");
    bool turn_only = true;
    for (char c : rest) {
        if (c != 'L' && c != 'R') turn_only = false;
        if (c != 'L' && c != 'R' && c != 'h' && c != 'v')
            throw parse_error(std::string("illegal script character '") + c + "'");
    }
    if (turn_only) {
        sc.seed = expand_turn_seed(rest);
    } else {
        sc.seed = make_word(rest, /*closed=*/false);
    }
    return sc;
}

// Inverse of parse_script for generated scripts: closed seeds collapse back
// to their turn letters, open seeds are written in full.
inline std::string render_script(const Script& sc) {
    std::string out = sc.ops.str();
    if (sc.seed.closed) {
        for (Symbol s : sc.seed.symbols)
            if (is_turn(s)) out.push_back(symbol_char(s));
    } else {
        out += sc.seed.str();
    }
    return out;
}

} // namespace truchet
