#include "oddminor/codec.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include "oddminor/errors.hpp"

namespace oddminor {

namespace {

inline constexpr std::uint64_t kGraph6MaxOrder = 68719476735ULL;

void put_order(std::string& out, std::uint64_t n) {
  auto put_bits = [&](int groups) {
    for (int k = groups - 1; k >= 0; --k) out.push_back(static_cast<char>(63 + ((n >> (6 * k)) & 63)));
  };
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back('~');
    put_bits(3);
  } else {
    out.push_back('~');
    out.push_back('~');
    put_bits(6);
  }
}

}  // namespace

std::string encode_graph6(const Graph& g) {
  const std::uint64_t n = g.order();
  if (n > kGraph6MaxOrder) throw PreconditionFailed("graph too large for graph6");
  std::string out;
  put_order(out, n);
  const std::uint64_t nbits = n * (n - (n > 0 ? 1 : 0)) / 2;
  out.reserve(out.size() + (nbits + 5) / 6);
  int acc = 0;
  int filled = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

Graph decode_graph6(std::string_view text) {
  std::size_t pos = 0;
  constexpr std::string_view kHeader = ">>graph6<<";
  if (text.substr(0, kHeader.size()) == kHeader) pos = kHeader.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ' || text.back() == '\t'))
    text.remove_suffix(1);
  auto byte = [&](std::size_t at) -> int {
    if (at >= text.size()) throw MalformedInput("graph6 input ends early", at);
    const int c = static_cast<unsigned char>(text[at]);
    if (c < 63 || c > 126) throw MalformedInput("byte outside the graph6 range 63..126", at);
    return c - 63;
  };
  std::uint64_t n = 0;
  if (pos >= text.size()) throw MalformedInput("empty graph6 input", pos);
  if (text[pos] != '~') {
    n = static_cast<std::uint64_t>(byte(pos++));
  } else if (pos + 1 < text.size() && text[pos + 1] == '~') {
    pos += 2;
    for (int k = 0; k < 6; ++k) n = (n << 6) | static_cast<std::uint64_t>(byte(pos++));
  } else {
    pos += 1;
    for (int k = 0; k < 3; ++k) n = (n << 6) | static_cast<std::uint64_t>(byte(pos++));
  }
  if (n > (std::uint64_t{1} << 20)) throw MalformedInput("graph6 order " + std::to_string(n) + " is too large", 0);
  const std::uint64_t nbits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t nbytes = static_cast<std::size_t>((nbits + 5) / 6);
  if (text.size() - pos < nbytes) throw MalformedInput("graph6 edge data is truncated", text.size());
  if (text.size() - pos > nbytes) throw MalformedInput("trailing bytes after graph6 edge data", pos + nbytes);
  Graph g(static_cast<std::size_t>(n));
  std::uint64_t k = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i, ++k) {
      const int b = byte(pos + static_cast<std::size_t>(k / 6));
      if ((b >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  if (k % 6 != 0) {
    const int last = byte(pos + nbytes - 1);
    if (last & ((1 << (6 - k % 6)) - 1)) throw MalformedInput("non-zero graph6 padding bits", pos + nbytes - 1);
  }
  return g;
}

std::string encode_dimacs(const Graph& g) {
  std::ostringstream os;
  os << "p edge " << g.order() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) os << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
  return os.str();
}

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_count(std::string_view word, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc{} || ptr != word.data() + word.size())
    throw MalformedInput("expected a non-negative integer, got '" + std::string(word) + "'", line);
  return v;
}

}  // namespace

DimacsGraph decode_dimacs(std::string_view text) {
  DimacsGraph out;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const auto words = split_words(line);
    if (words.empty() || words[0] == "c") continue;
    if (words[0] == "p") {
      if (have_header) throw MalformedInput("second problem line", line_no);
      if (words.size() != 4 || (words[1] != "edge" && words[1] != "col"))
        throw MalformedInput("problem line must read 'p edge <n> <m>'", line_no);
      const std::uint64_t n = parse_count(words[2], line_no);
      parse_count(words[3], line_no);
      if (n > (std::uint64_t{1} << 20)) throw MalformedInput("vertex count is too large", line_no);
      out.graph = Graph(static_cast<std::size_t>(n));
      have_header = true;
    } else if (words[0] == "e") {
      if (!have_header) throw MalformedInput("edge line before the problem line", line_no);
      if (words.size() != 3) throw MalformedInput("edge line must read 'e <u> <v>'", line_no);
      const std::uint64_t u = parse_count(words[1], line_no);
      const std::uint64_t v = parse_count(words[2], line_no);
      const std::uint64_t n = out.graph.order();
      if (u == 0 || v == 0 || u > n || v > n)
        throw MalformedInput("vertex index outside 1.." + std::to_string(n), line_no);
      if (u == v) throw MalformedInput("self-loop", line_no);
      const auto a = static_cast<Vertex>(u - 1);
      const auto b = static_cast<Vertex>(v - 1);
      if (out.graph.adjacent(a, b))
        ++out.duplicate_edges;
      else
        out.graph.add_edge(a, b);
    } else {
      throw MalformedInput("unrecognised line type '" + std::string(words[0]) + "'", line_no);
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw MalformedInput("missing problem line", line_no);
  return out;
}

}  // namespace oddminor
