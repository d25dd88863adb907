#include <iostream>
int main() { std::cout << "cli placeholder\n"; return 1; }
