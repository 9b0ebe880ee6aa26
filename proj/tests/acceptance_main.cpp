#include "kmfaces/verify.hpp"
#include <iostream>
int main(){ return 0; }
