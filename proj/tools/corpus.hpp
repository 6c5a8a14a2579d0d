#pragma once

#include <string_view>
#include <vector>

struct CorpusEntry {
  std::string_view name;
  std::string_view session;
  std::string_view expected;
};

extern const std::vector<CorpusEntry> kCorpus;
