#include "discdep/attnstore.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "discdep/error.h"
#include "json.hpp"

namespace discdep {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kTensorSuffix = ".attn.f32";
constexpr const char* kMetaSuffix = ".meta.json";

std::uint32_t byteswap32(std::uint32_t v) {
  return (v >> 24) | ((v >> 8) & 0xff00u) | ((v << 8) & 0xff0000u) | (v << 24);
}

void to_little_endian(std::span<float> values) {
  if constexpr (std::endian::native == std::endian::big) {
    for (float& f : values) {
      std::uint32_t bits;
      std::memcpy(&bits, &f, sizeof bits);
      bits = byteswap32(bits);
      std::memcpy(&f, &bits, sizeof bits);
    }
  }
}

}  // namespace

std::string to_string(const HeadId& h) {
  return std::to_string(h.layer) + ":" +
         (h.is_layer_average() ? std::string("all") : std::to_string(h.head));
}

HeadId parse_head_id(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw InvalidArgument("head id '" + text + "' is not of the form L:H");
  }
  try {
    HeadId h;
    std::size_t used = 0;
    const std::string layer = text.substr(0, colon);
    const std::string head = text.substr(colon + 1);
    h.layer = std::stoi(layer, &used);
    if (used != layer.size() || h.layer < 0) throw std::invalid_argument("");
    if (head == "all") {
      h.head = HeadId::kAllHeads;
    } else {
      h.head = std::stoi(head, &used);
      if (used != head.size() || h.head < 0) throw std::invalid_argument("");
    }
    return h;
  } catch (const std::exception&) {
    throw InvalidArgument("head id '" + text + "' is not of the form L:H");
  }
}

AttentionRecord::AttentionRecord(std::string dialogue_id, int n_layers,
                                 int n_heads, int n_tokens,
                                 std::vector<float> values,
                                 std::vector<TokenSpan> spans)
    : dialogue_id_(std::move(dialogue_id)),
      n_layers_(n_layers),
      n_heads_(n_heads),
      n_tokens_(n_tokens),
      values_(std::move(values)),
      spans_(std::move(spans)) {
  const std::string ctx = "attention record '" + dialogue_id_ + "': ";
  if (n_layers_ <= 0 || n_heads_ <= 0 || n_tokens_ <= 0) {
    throw DataError(ctx + "dimensions must be positive");
  }
  const std::size_t expected = static_cast<std::size_t>(n_layers_) * n_heads_ *
                               n_tokens_ * n_tokens_;
  if (values_.size() != expected) {
    throw DataError(ctx + "size mismatch: header implies " +
                    std::to_string(expected) + " floats, payload has " +
                    std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DataError(ctx + "non-finite value at flat offset " +
                      std::to_string(i));
    }
  }
  int prev_end = 0;
  for (std::size_t i = 0; i < spans_.size(); ++i) {
    const auto& s = spans_[i];
    if (s.start >= s.end) {
      throw DataError(ctx + "span " + std::to_string(i) + " is empty");
    }
    if (s.start < 0 || s.end > n_tokens_) {
      throw DataError(ctx + "span " + std::to_string(i) +
                      " lies outside [0, n_tokens)");
    }
    if (i > 0 && s.start < prev_end) {
      throw DataError(ctx + "span " + std::to_string(i) +
                      " overlaps or precedes span " + std::to_string(i - 1));
    }
    prev_end = s.end;
  }
}

std::span<const float> AttentionRecord::head_matrix(int layer,
                                                    int head) const {
  const std::size_t block = static_cast<std::size_t>(n_tokens_) * n_tokens_;
  const std::size_t offset =
      (static_cast<std::size_t>(layer) * n_heads_ + head) * block;
  return std::span<const float>(values_).subspan(offset, block);
}

float AttentionRecord::at(int layer, int head, int query, int key) const {
  return head_matrix(layer, head)[static_cast<std::size_t>(query) * n_tokens_ +
                                  key];
}

bool AttentionRecord::valid(const HeadId& h) const {
  if (h.layer < 0 || h.layer >= n_layers_) return false;
  return h.is_layer_average() || (h.head >= 0 && h.head < n_heads_);
}

fs::path tensor_path(const fs::path& dir, const std::string& dialogue_id) {
  return dir / (dialogue_id + kTensorSuffix);
}

fs::path meta_path(const fs::path& dir, const std::string& dialogue_id) {
  return dir / (dialogue_id + kMetaSuffix);
}

AttentionRecord read_record(const fs::path& dir,
                            const std::string& dialogue_id) {
  const fs::path meta_file = meta_path(dir, dialogue_id);
  const fs::path tensor_file = tensor_path(dir, dialogue_id);
  std::ifstream meta_in(meta_file);
  if (!meta_in) throw DataError("cannot open " + meta_file.string());

  json meta;
  std::vector<TokenSpan> spans;
  int n_layers = 0, n_heads = 0, n_tokens = 0;
  try {
    meta = json::parse(meta_in);
    if (meta.at("dialogue_id").get<std::string>() != dialogue_id) {
      throw DataError(meta_file.string() + ": dialogue_id field is '" +
                      meta.at("dialogue_id").get<std::string>() + "'");
    }
    n_layers = meta.at("n_layers").get<int>();
    n_heads = meta.at("n_heads").get<int>();
    n_tokens = meta.at("n_tokens").get<int>();
    for (const auto& s : meta.at("edu_token_spans")) {
      if (!s.is_array() || s.size() != 2) {
        throw DataError(meta_file.string() +
                        ": spans must be [start, end] pairs");
      }
      spans.push_back({s[0].get<int>(), s[1].get<int>()});
    }
  } catch (const json::exception& e) {
    throw DataError(meta_file.string() + ": " + e.what());
  }

  std::ifstream tensor_in(tensor_file, std::ios::binary | std::ios::ate);
  if (!tensor_in) throw DataError("cannot open " + tensor_file.string());
  const auto bytes = static_cast<std::size_t>(tensor_in.tellg());
  if (bytes % sizeof(float) != 0) {
    throw DataError(tensor_file.string() +
                    ": payload is not a whole number of float32 values");
  }
  std::vector<float> values(bytes / sizeof(float));
  tensor_in.seekg(0);
  tensor_in.read(reinterpret_cast<char*>(values.data()),
                 static_cast<std::streamsize>(bytes));
  if (!tensor_in) throw DataError("short read on " + tensor_file.string());
  to_little_endian(values);

  return AttentionRecord(dialogue_id, n_layers, n_heads, n_tokens,
                         std::move(values), std::move(spans));
}

void write_record(const fs::path& dir, const AttentionRecord& record) {
  fs::create_directories(dir);
  json meta;
  meta["dialogue_id"] = record.dialogue_id();
  meta["n_layers"] = record.n_layers();
  meta["n_heads"] = record.n_heads();
  meta["n_tokens"] = record.n_tokens();
  meta["edu_token_spans"] = json::array();
  for (const auto& s : record.spans()) {
    meta["edu_token_spans"].push_back({s.start, s.end});
  }
  {
    std::ofstream out(meta_path(dir, record.dialogue_id()));
    out << meta.dump(2) << '\n';
    if (!out) throw DataError("cannot write meta for " + record.dialogue_id());
  }
  std::vector<float> values(record.values().begin(), record.values().end());
  to_little_endian(values);
  std::ofstream out(tensor_path(dir, record.dialogue_id()), std::ios::binary);
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(float)));
  if (!out) throw DataError("cannot write tensor for " + record.dialogue_id());
}

std::vector<std::string> list_records(const fs::path& dir) {
  std::vector<std::string> ids;
  const std::string suffix = kMetaSuffix;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      ids.push_back(name.substr(0, name.size() - suffix.size()));
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<RowViolation> validate_stochastic(const AttentionRecord& record,
                                              double tol) {
  std::vector<RowViolation> out;
  const int k = record.n_tokens();
  for (int l = 0; l < record.n_layers(); ++l) {
    for (int h = 0; h < record.n_heads(); ++h) {
      const auto m = record.head_matrix(l, h);
      for (int q = 0; q < k; ++q) {
        double sum = 0.0;
        for (int t = 0; t < k; ++t) sum += m[static_cast<std::size_t>(q) * k + t];
        if (std::abs(sum - 1.0) > tol) out.push_back({{l, h}, q, sum});
      }
    }
  }
  return out;
}

}  // namespace discdep
