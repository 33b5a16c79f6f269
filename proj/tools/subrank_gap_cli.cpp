// Placeholder entry point; the real command surface lands with the classifier.
#include <cstdio>

int main() {
  std::puts("subrank-gap: not yet wired");
  return 1;
}
