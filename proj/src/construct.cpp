#include "pisot/construct.hpp"

#include "pisot/error.hpp"

#include <deque>

namespace pisot {

PolynomialSpec PolynomialSpec::parse(std::string_view text) {
  PolynomialSpec f;
  f.coeffs = parse_polynomial(text).coef;
  return f;
}

BigInt PolynomialSpec::operator()(const BigInt& n) const {
  BigInt acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * n + *it;
  return acc;
}

std::string PolynomialSpec::text() const { return to_string(IntPoly(coeffs)); }

void PolynomialSpec::validate(long n_max) const {
  if (degree() < 1) throw Error(ErrorKind::InvalidArgument, "f must have degree >= 1");
  if (coeffs.back() < 1) throw Error(ErrorKind::InvalidArgument, "f must have a positive leading coefficient");
  for (long n = 2; n <= n_max; ++n)
    if ((*this)(BigInt(n)) < 1)
      throw Error(ErrorKind::InvalidArgument, "f(" + std::to_string(n) + ") < 1 for f = " + text());
}

std::string to_string(Source s) { return s == Source::Primes ? "primes" : "integers"; }

Source source_from_string(std::string_view text) {
  if (text == "primes") return Source::Primes;
  if (text == "integers") return Source::Integers;
  throw Error(ErrorKind::InvalidArgument, "unknown source '" + std::string(text) + "'");
}

ExpansionSource::ExpansionSource(std::shared_ptr<const Expander> expander, PolynomialSpec f, Source source,
                                 std::uint64_t limit, std::uint64_t first)
    : expander_(std::move(expander)), f_(std::move(f)), source_(source), limit_(limit), counter_(first) {}

std::optional<Word> ExpansionSource::next() {
  if (limit_ > 0 && emitted_ >= limit_) return std::nullopt;
  last_ = source_ == Source::Primes ? primes_.next() : counter_++;
  BigInt value = f_(BigInt(static_cast<unsigned long>(last_)));
  if (value < 1)
    throw Error(ErrorKind::InvalidArgument, "f(" + std::to_string(last_) + ") = " + value.get_str() + " is not positive");
  ++emitted_;
  return expander_->expand(value).word();
}

DigitStream::DigitStream(std::unique_ptr<WordSource> source, int connector, std::size_t group)
    : source_(std::move(source)), connector_(connector), group_(std::max<std::size_t>(group, 1)) {}

bool DigitStream::refill() {
  while (pos_ >= buffer_.size()) {
    auto w = source_->next();
    if (!w) return false;
    buffer_.clear();
    pos_ = 0;
    if (words_ > 0 && words_ % group_ == 0) buffer_.assign(static_cast<std::size_t>(connector_), 0);
    buffer_.insert(buffer_.end(), w->begin(), w->end());
    ++words_;
  }
  return true;
}

Digit DigitStream::next() {
  if (!refill()) throw Error(ErrorKind::SourceExhausted, "stream source exhausted");
  ++position_;
  return buffer_[pos_++];
}

std::size_t DigitStream::read(std::size_t n, Word& out) {
  std::size_t got = 0;
  while (got < n && refill()) {
    std::size_t take = std::min(n - got, buffer_.size() - pos_);
    out.insert(out.end(), buffer_.begin() + static_cast<long>(pos_), buffer_.begin() + static_cast<long>(pos_ + take));
    pos_ += take;
    got += take;
  }
  position_ += got;
  return got;
}

Word join(const Word& a, const Word& b, const ShiftAutomaton& automaton) {
  if (!is_admissible(a, automaton) || !is_admissible(b, automaton))
    throw Error(ErrorKind::Inadmissible, "join of inadmissible words");
  Word out = a;
  out.insert(out.end(), static_cast<std::size_t>(connecting_order(automaton)), 0);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<Word> split_word(const Word& w, int m) {
  if (m < 0 || m > 20) throw Error(ErrorKind::InvalidArgument, "split exponent out of range");
  const std::size_t parts = std::size_t(1) << m;
  const std::size_t base = w.size() / parts, extra = w.size() % parts;
  std::vector<Word> out;
  out.reserve(parts);
  std::size_t at = 0;
  for (std::size_t r = 0; r < parts; ++r) {
    std::size_t len = base + (r < extra ? 1 : 0);
    out.emplace_back(w.begin() + static_cast<long>(at), w.begin() + static_cast<long>(at + len));
    at += len;
  }
  return out;
}

namespace {

void check_lengths(std::size_t a, std::size_t b, std::size_t index) {
  if ((a > b ? a - b : b - a) > 1)
    throw Error(ErrorKind::LengthMismatch, "word lengths " + std::to_string(a) + " and " + std::to_string(b) +
                                               " at index " + std::to_string(index));
}

}  // namespace

Word interleave(const std::vector<std::vector<Word>>& streams) {
  Word out;
  if (streams.empty()) return out;
  const std::size_t count = streams[0].size();
  for (const auto& s : streams)
    if (s.size() != count) throw Error(ErrorKind::LengthMismatch, "streams have different numbers of words");
  for (std::size_t i = 0; i < count; ++i)
    for (const auto& s : streams) {
      check_lengths(s[i].size(), streams[0][i].size(), i);
      out.insert(out.end(), s[i].begin(), s[i].end());
    }
  return out;
}

InterleaveSource::InterleaveSource(std::vector<std::unique_ptr<WordSource>> streams) : streams_(std::move(streams)) {
  if (streams_.empty()) throw Error(ErrorKind::InvalidArgument, "interleave needs at least one stream");
}

std::optional<Word> InterleaveSource::next() {
  auto w = streams_[turn_]->next();
  if (!w) {
    if (turn_ != 0) throw Error(ErrorKind::LengthMismatch, "interleaved stream ended mid-round");
    return std::nullopt;
  }
  if (turn_ == 0)
    round_length_ = w->size();
  else
    check_lengths(w->size(), round_length_, turn_);
  turn_ = (turn_ + 1) % streams_.size();
  return w;
}

namespace {

struct SplitHub {
  std::unique_ptr<WordSource> source;
  int m;
  std::vector<std::deque<Word>> queues;

  bool pull() {
    auto w = source->next();
    if (!w) return false;
    auto pieces = split_word(*w, m);
    for (std::size_t r = 0; r < pieces.size(); ++r) queues[r].push_back(std::move(pieces[r]));
    return true;
  }
};

class PieceSource : public WordSource {
public:
  PieceSource(std::shared_ptr<SplitHub> hub, std::size_t r) : hub_(std::move(hub)), r_(r) {}
  std::optional<Word> next() override {
    auto& q = hub_->queues[r_];
    if (q.empty() && !hub_->pull()) return std::nullopt;
    Word w = std::move(q.front());
    q.pop_front();
    return w;
  }

private:
  std::shared_ptr<SplitHub> hub_;
  std::size_t r_;
};

}  // namespace

std::vector<std::unique_ptr<WordSource>> split_streams(std::unique_ptr<WordSource> source, int m) {
  auto hub = std::make_shared<SplitHub>();
  hub->source = std::move(source);
  hub->m = m;
  const std::size_t parts = split_word({}, m).size();
  hub->queues.resize(parts);
  std::vector<std::unique_ptr<WordSource>> out;
  for (std::size_t r = 0; r < parts; ++r) out.push_back(std::make_unique<PieceSource>(hub, r));
  return out;
}

DigitStream ce_stream(std::shared_ptr<const Expander> expander, const StreamConfig& config) {
  const int j = connecting_order(build_automaton(expansion_of_one(expander->base())));
  auto source = std::make_unique<ExpansionSource>(expander, config.f, config.source, config.limit);
  if (config.m == 0) return DigitStream(std::move(source), j);
  auto parts = split_streams(std::move(source), config.m);
  const std::size_t group = parts.size();
  return DigitStream(std::make_unique<InterleaveSource>(std::move(parts)), j, group);
}

std::vector<PatchingRatios> patching_ratios(WordSource& source, const std::vector<std::uint64_t>& checkpoints) {
  std::vector<PatchingRatios> out;
  std::uint64_t n = 0;
  double total = 0;
  std::optional<Word> w = source.next();
  for (std::uint64_t target : checkpoints) {
    while (n < target && w) {
      total += static_cast<double>(w->size());
      ++n;
      w = source.next();
    }
    if (n < target || !w) break;
    out.push_back({n, static_cast<double>(w->size()) / total, static_cast<double>(n) / total});
  }
  return out;
}

}  // namespace pisot
