// Regenerates the bundled corpus files from their builders.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "carith/corpus.hpp"

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : carith::corpus_dir();
  std::filesystem::create_directories(dir);
  try {
    for (const auto& [name, text] : carith::corpus_files()) {
      std::ofstream out(dir / name, std::ios::binary);
      out << text;
      std::cout << (dir / name).string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
