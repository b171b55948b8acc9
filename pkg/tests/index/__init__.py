# Index tests package
