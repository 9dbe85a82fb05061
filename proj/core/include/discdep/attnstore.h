#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace discdep {

// Half-open token interval [start, end) covering one EDU.
struct TokenSpan {
  int start = 0;
  int end = 0;

  int length() const { return end - start; }
  bool operator==(const TokenSpan&) const = default;
};

// One attention head, or the element-wise average of every head of a layer
// (head == kAllHeads).
struct HeadId {
  static constexpr int kAllHeads = -1;

  int layer = 0;
  int head = 0;

  static HeadId layer_average(int layer) { return {layer, kAllHeads}; }
  bool is_layer_average() const { return head == kAllHeads; }

  auto operator<=>(const HeadId&) const = default;
};

// "3:7" for a single head, "3:all" for a layer average.
std::string to_string(const HeadId& h);
HeadId parse_head_id(const std::string& text);

// Per-dialogue encoder self-attention, [layer][head][query][key], plus the
// token span of every EDU. Tokens outside all spans are ignored downstream.
class AttentionRecord {
 public:
  AttentionRecord() = default;
  // Validates dimensions and spans; throws DataError on violation.
  AttentionRecord(std::string dialogue_id, int n_layers, int n_heads,
                  int n_tokens, std::vector<float> values,
                  std::vector<TokenSpan> spans);

  const std::string& dialogue_id() const { return dialogue_id_; }
  int n_layers() const { return n_layers_; }
  int n_heads() const { return n_heads_; }
  int n_tokens() const { return n_tokens_; }
  int n_edus() const { return static_cast<int>(spans_.size()); }
  const std::vector<TokenSpan>& spans() const { return spans_; }
  std::span<const float> values() const { return values_; }

  // Row-major n_tokens x n_tokens matrix of one (layer, head).
  std::span<const float> head_matrix(int layer, int head) const;
  float at(int layer, int head, int query, int key) const;

  bool valid(const HeadId& h) const;

 private:
  std::string dialogue_id_;
  int n_layers_ = 0;
  int n_heads_ = 0;
  int n_tokens_ = 0;
  std::vector<float> values_;
  std::vector<TokenSpan> spans_;
};

std::filesystem::path tensor_path(const std::filesystem::path& dir,
                                  const std::string& dialogue_id);
std::filesystem::path meta_path(const std::filesystem::path& dir,
                                const std::string& dialogue_id);

// Reads `<id>.meta.json` and `<id>.attn.f32` from `dir`. The tensor file is
// raw little-endian float32 in [layer][head][query][key] order.
AttentionRecord read_record(const std::filesystem::path& dir,
                            const std::string& dialogue_id);
void write_record(const std::filesystem::path& dir,
                  const AttentionRecord& record);

// Dialogue ids of every `*.meta.json` in `dir`, sorted.
std::vector<std::string> list_records(const std::filesystem::path& dir);

struct RowViolation {
  HeadId head;
  int row = 0;
  double sum = 0.0;
};

// Every (head, query row) whose key sum deviates from 1 by more than `tol`.
std::vector<RowViolation> validate_stochastic(const AttentionRecord& record,
                                              double tol);

}  // namespace discdep
